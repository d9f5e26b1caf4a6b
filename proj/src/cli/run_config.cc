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

#include "schemadst/cli/run_config.h"

#include <fstream>
#include <set>
#include <sstream>

#include "schemadst/common/error.h"

namespace schemadst {
namespace {

template <typename V>
void Take(const nlohmann::json& j, const char* key, V& out) {
  if (j.contains(key)) out = j.at(key).get<V>();
}

void RejectUnknown(const nlohmann::json& j, const std::set<std::string>& known,
                   const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

}  // namespace

void RunConfig::Finalize() {
  if (data_dir.empty()) {
    if (const char* env = std::getenv(kDataRootEnv)) data_dir = env;
  }
  if (output_dir.empty()) output_dir = "schemadst_out";
  if (vocab.empty()) vocab = output_dir / "vocab.txt";
  if (checkpoint.empty()) checkpoint = output_dir / "model.ckpt";
  examples.seed = seed;
  model.seed = seed;
  train.seed = seed;
  synth.seed = seed;
  if (workers < 1) throw ConfigError("workers must be at least 1");
  if (predict_batch_size < 1) throw ConfigError("predict batch size must be at least 1");
  if (examples.max_seq_len < 4) throw ConfigError("max_seq_len must be at least 4");
  if (model.encoder.max_positions < examples.max_seq_len) {
    model.encoder.max_positions = examples.max_seq_len;
  }
  train.Validate();
  tracker.Validate();
}

nlohmann::json RunConfig::ToJson() const {
  return {{"data_dir", data_dir.string()},
          {"output_dir", output_dir.string()},
          {"vocab", vocab.string()},
          {"checkpoint", checkpoint.string()},
          {"split", split},
          {"seed", seed},
          {"workers", workers},
          {"predict_batch_size", predict_batch_size},
          {"oracle", oracle},
          {"fuzzy_match", fuzzy_match},
          {"vocab_max_words", vocab_max_words},
          {"examples",
           {{"max_seq_len", examples.max_seq_len},
            {"normalize_names", examples.normalize_names},
            {"balance", examples.balance}}},
          {"model", model.ToJson()},
          {"train", train.ToJson()},
          {"tracker",
           {{"intent_threshold", tracker.intent_threshold},
            {"requested_threshold", tracker.requested_threshold},
            {"max_answer_len", tracker.max_answer_len}}},
          {"synth", synth.ToJson()}};
}

RunConfig RunConfig::FromJson(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("run config must be a JSON object");
  RejectUnknown(j,
                {"data_dir", "output_dir", "vocab", "checkpoint", "split", "seed",
                 "workers", "predict_batch_size", "oracle", "fuzzy_match",
                 "vocab_max_words", "examples", "model", "train", "tracker", "synth"},
                "run config");
  RunConfig c;
  try {
    if (j.contains("data_dir")) c.data_dir = j.at("data_dir").get<std::string>();
    if (j.contains("output_dir")) c.output_dir = j.at("output_dir").get<std::string>();
    if (j.contains("vocab")) c.vocab = j.at("vocab").get<std::string>();
    if (j.contains("checkpoint")) c.checkpoint = j.at("checkpoint").get<std::string>();
    Take(j, "split", c.split);
    Take(j, "seed", c.seed);
    Take(j, "workers", c.workers);
    Take(j, "predict_batch_size", c.predict_batch_size);
    Take(j, "oracle", c.oracle);
    Take(j, "fuzzy_match", c.fuzzy_match);
    Take(j, "vocab_max_words", c.vocab_max_words);
    if (j.contains("examples")) {
      const auto& e = j.at("examples");
      RejectUnknown(e, {"max_seq_len", "normalize_names", "balance"}, "examples");
      Take(e, "max_seq_len", c.examples.max_seq_len);
      Take(e, "normalize_names", c.examples.normalize_names);
      Take(e, "balance", c.examples.balance);
    }
    if (j.contains("model")) c.model = ModelConfig::FromJson(j.at("model"));
    if (j.contains("train")) c.train = TrainConfig::FromJson(j.at("train"));
    if (j.contains("tracker")) {
      const auto& t = j.at("tracker");
      RejectUnknown(t, {"intent_threshold", "requested_threshold", "max_answer_len"},
                    "tracker");
      Take(t, "intent_threshold", c.tracker.intent_threshold);
      Take(t, "requested_threshold", c.tracker.requested_threshold);
      Take(t, "max_answer_len", c.tracker.max_answer_len);
    }
    if (j.contains("synth")) c.synth = SynthConfig::FromJson(j.at("synth"));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("run config: ") + e.what());
  }
  return c;
}

RunConfig RunConfig::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file " + path.string());
  try {
    return FromJson(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("config " + path.string() + ": " + e.what());
  }
}

}  // namespace schemadst
