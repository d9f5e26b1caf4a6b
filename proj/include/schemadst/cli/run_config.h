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

#ifndef SCHEMADST_CLI_RUN_CONFIG_H_
#define SCHEMADST_CLI_RUN_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "schemadst/examples/example_builder.h"
#include "schemadst/metrics/metrics.h"
#include "schemadst/model/nlu_model.h"
#include "schemadst/synth/synth.h"
#include "schemadst/tracker/state_tracker.h"
#include "schemadst/train/train_config.h"

namespace schemadst {

// Environment variable supplying the default data directory.
inline constexpr char kDataRootEnv[] = "SCHEMADST_DATA_ROOT";

// Everything one pipeline run needs, loadable from a single JSON file and
// overridable from the command line.
struct RunConfig {
  std::filesystem::path data_dir;    // SGD layout: <data_dir>/{train,dev}/
  std::filesystem::path output_dir;  // artifacts of every stage
  std::filesystem::path vocab;       // default: <output_dir>/vocab.txt
  std::filesystem::path checkpoint;  // default: <output_dir>/model.ckpt
  std::string split = "dev";         // split predicted/tracked/evaluated
  std::uint64_t seed = 7;  // every stage derives its randomness from this
  int workers = 1;
  int predict_batch_size = 64;
  bool oracle = false;  // predict from gold labels instead of the model
  bool fuzzy_match = false;
  int vocab_max_words = 4000;

  ExampleConfig examples;
  ModelConfig model;
  TrainConfig train;
  TrackerConfig tracker;
  SynthConfig synth;

  // Resolves defaults that depend on other fields (paths, seeds).
  void Finalize();
  nlohmann::json ToJson() const;
  // Missing keys keep defaults; unknown keys throw ConfigError.
  static RunConfig FromJson(const nlohmann::json& j);
  static RunConfig Load(const std::filesystem::path& path);

  std::filesystem::path SplitDir(const std::string& split) const { return data_dir / split; }
  std::filesystem::path ExamplesPath(const std::string& split) const {
    return output_dir / (split + "_examples.jsonl");
  }
  std::filesystem::path PredictionsPath() const {
    return output_dir / ("predictions_" + split + ".jsonl");
  }
  std::filesystem::path StatesPath() const {
    return output_dir / ("states_" + split + ".jsonl");
  }
  std::filesystem::path MetricsPath() const {
    return output_dir / ("metrics_" + split + ".json");
  }
};

}  // namespace schemadst

#endif  // SCHEMADST_CLI_RUN_CONFIG_H_
