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

#ifndef SCHEMADST_MODEL_CHECKPOINT_H_
#define SCHEMADST_MODEL_CHECKPOINT_H_

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>

#include <nlohmann/json.hpp>

#include "schemadst/model/nlu_model.h"

namespace schemadst {

// Binary checkpoint: 8-byte magic, u32 version, u64 header length, a JSON
// header (model config, encoder description, vocabulary reference, tensor
// table), then the raw tensors in header order.
inline constexpr char kCheckpointMagic[8] = {'S', 'D', 'S', 'T', 'C', 'K', 'P', 'T'};
inline constexpr std::uint32_t kCheckpointVersion = 1;

struct VocabularyRef {
  std::string path;
  int size = 0;
  std::uint64_t fingerprint = 0;
};

struct CheckpointHeader {
  ModelConfig model;
  nlohmann::json encoder;
  VocabularyRef vocabulary;
  std::string scalar;  // "float32" or "float64"
  nlohmann::json extra;  // free-form run metadata
};

template <typename T>
void SaveCheckpoint(const std::filesystem::path& path, const NluModel<T>& model,
                    const VocabularyRef& vocabulary,
                    const nlohmann::json& extra = nlohmann::json::object());

CheckpointHeader ReadCheckpointHeader(const std::filesystem::path& path);

// Overwrites the parameters of an existing model; names and shapes must match.
template <typename T>
CheckpointHeader LoadParameters(const std::filesystem::path& path, NluModel<T>& model);

// Rebuilds a toy-transformer model from a checkpoint.
template <typename T>
std::unique_ptr<NluModel<T>> LoadCheckpoint(const std::filesystem::path& path,
                                            CheckpointHeader* header = nullptr);

}  // namespace schemadst

#endif  // SCHEMADST_MODEL_CHECKPOINT_H_
