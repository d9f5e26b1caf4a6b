/* Copyright 2026 The schemadst Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "schemadst/model/checkpoint.h"

#include <cstring>
#include <fstream>
#include <type_traits>

#include "schemadst/common/error.h"

namespace schemadst {
namespace {

template <typename T>
const char* ScalarName() {
  return std::is_same_v<T, float> ? "float32" : "float64";
}

struct RawCheckpoint {
  nlohmann::json header;
  std::streamoff data_offset = 0;
};

RawCheckpoint ReadRaw(std::ifstream& in, const std::filesystem::path& path) {
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kCheckpointMagic, sizeof(magic)) != 0) {
    throw ParseError(path.string() + ": not a checkpoint file");
  }
  std::uint32_t version = 0;
  std::uint64_t header_length = 0;
  in.read(reinterpret_cast<char*>(&version), sizeof(version));
  in.read(reinterpret_cast<char*>(&header_length), sizeof(header_length));
  if (!in || version != kCheckpointVersion) {
    throw ParseError(path.string() + ": unsupported checkpoint version " +
                     std::to_string(version));
  }
  std::string text(header_length, '\0');
  in.read(text.data(), static_cast<std::streamsize>(header_length));
  if (!in) throw ParseError(path.string() + ": truncated header");
  RawCheckpoint raw;
  try {
    raw.header = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": header byte " + std::to_string(e.byte) + ": " +
                     e.what());
  }
  raw.data_offset = in.tellg();
  return raw;
}

CheckpointHeader HeaderFromJson(const nlohmann::json& j) {
  CheckpointHeader header;
  header.model = ModelConfig::FromJson(j.at("model"));
  header.encoder = j.at("encoder");
  const auto& vocab = j.at("vocabulary");
  header.vocabulary = {vocab.at("path").get<std::string>(), vocab.at("size").get<int>(),
                       vocab.at("fingerprint").get<std::uint64_t>()};
  header.scalar = j.at("scalar").get<std::string>();
  header.extra = j.value("extra", nlohmann::json::object());
  return header;
}

}  // namespace

template <typename T>
void SaveCheckpoint(const std::filesystem::path& path, const NluModel<T>& model,
                    const VocabularyRef& vocabulary, const nlohmann::json& extra) {
  const auto& store = model.store();
  nlohmann::json header = {
      {"model", model.config().ToJson()},
      {"encoder", model.encoder().Describe()},
      {"vocabulary",
       {{"path", vocabulary.path}, {"size", vocabulary.size},
        {"fingerprint", vocabulary.fingerprint}}},
      {"scalar", ScalarName<T>()},
      {"extra", extra},
      {"tensors", nlohmann::json::array()}};
  for (int i = 0; i < store.size(); ++i) {
    header["tensors"].push_back({{"name", store.name(i)},
                                 {"rows", store.value(i).rows()},
                                 {"cols", store.value(i).cols()}});
  }
  const std::string text = header.dump();
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out.write(kCheckpointMagic, sizeof(kCheckpointMagic));
  const std::uint32_t version = kCheckpointVersion;
  const std::uint64_t length = text.size();
  out.write(reinterpret_cast<const char*>(&version), sizeof(version));
  out.write(reinterpret_cast<const char*>(&length), sizeof(length));
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  for (int i = 0; i < store.size(); ++i) {
    const auto& m = store.value(i);
    out.write(reinterpret_cast<const char*>(m.data()),
              static_cast<std::streamsize>(m.size() * sizeof(T)));
  }
  if (!out) throw Error("failed writing " + path.string());
}

CheckpointHeader ReadCheckpointHeader(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open checkpoint " + path.string());
  return HeaderFromJson(ReadRaw(in, path).header);
}

template <typename T>
CheckpointHeader LoadParameters(const std::filesystem::path& path, NluModel<T>& model) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open checkpoint " + path.string());
  const RawCheckpoint raw = ReadRaw(in, path);
  CheckpointHeader header = HeaderFromJson(raw.header);
  if (header.scalar != ScalarName<T>()) {
    throw ValidationError(path.string() + ": checkpoint holds " + header.scalar +
                          " tensors, model uses " + ScalarName<T>());
  }
  auto& store = model.store();
  const auto& tensors = raw.header.at("tensors");
  if (static_cast<int>(tensors.size()) != store.size()) {
    throw ValidationError(path.string() + ": tensor count mismatch");
  }
  for (int i = 0; i < store.size(); ++i) {
    const auto& t = tensors[i];
    auto& m = store.value(i);
    if (t.at("name").get<std::string>() != store.name(i) ||
        t.at("rows").get<long>() != m.rows() || t.at("cols").get<long>() != m.cols()) {
      throw ValidationError(path.string() + ": tensor " + std::to_string(i) + " ('" +
                            t.at("name").get<std::string>() +
                            "') does not match the model");
    }
    in.read(reinterpret_cast<char*>(m.data()),
            static_cast<std::streamsize>(m.size() * sizeof(T)));
    if (!in) throw ParseError(path.string() + ": truncated tensor data");
  }
  return header;
}

template <typename T>
std::unique_ptr<NluModel<T>> LoadCheckpoint(const std::filesystem::path& path,
                                            CheckpointHeader* header_out) {
  const CheckpointHeader header = ReadCheckpointHeader(path);
  if (header.encoder.value("type", "") != "toy_transformer") {
    throw ValidationError(path.string() +
                          ": encoder type needs a custom factory to load");
  }
  auto model = std::make_unique<NluModel<T>>(header.model);
  CheckpointHeader loaded = LoadParameters(path, *model);
  if (header_out) *header_out = std::move(loaded);
  return model;
}

template void SaveCheckpoint<float>(const std::filesystem::path&, const NluModel<float>&,
                                    const VocabularyRef&, const nlohmann::json&);
template void SaveCheckpoint<double>(const std::filesystem::path&, const NluModel<double>&,
                                     const VocabularyRef&, const nlohmann::json&);
template CheckpointHeader LoadParameters<float>(const std::filesystem::path&,
                                                NluModel<float>&);
template CheckpointHeader LoadParameters<double>(const std::filesystem::path&,
                                                 NluModel<double>&);
template std::unique_ptr<NluModel<float>> LoadCheckpoint<float>(
    const std::filesystem::path&, CheckpointHeader*);
template std::unique_ptr<NluModel<double>> LoadCheckpoint<double>(
    const std::filesystem::path&, CheckpointHeader*);

}  // namespace schemadst
