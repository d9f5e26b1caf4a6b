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

#ifndef SCHEMADST_TRAIN_TRAIN_CONFIG_H_
#define SCHEMADST_TRAIN_TRAIN_CONFIG_H_

#include <cstdint>

#include <nlohmann/json.hpp>

namespace schemadst {

struct AdamConfig {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

struct TrainConfig {
  int epochs = 3;
  int batch_size = 32;
  double learning_rate = 1e-4;  // peak, reached at the end of warmup
  double warmup_ratio = 0.1;
  double decay_power = 1.0;
  double clip_norm = 1.0;
  AdamConfig adam;
  std::uint64_t seed = 0;

  // Throws ConfigError on out-of-range values.
  void Validate() const;
  nlohmann::json ToJson() const;
  // Missing keys keep their defaults; unknown keys are an error.
  static TrainConfig FromJson(const nlohmann::json& j);
};

// Warmup rises linearly from 0 to the peak, then a polynomial decays to 0 at
// total_steps. Update k (0-based) uses At(k).
class LrSchedule {
 public:
  LrSchedule(double peak, long total_steps, double warmup_ratio, double power = 1.0);

  double At(long step) const;
  long total_steps() const { return total_steps_; }
  long warmup_steps() const { return warmup_steps_; }

 private:
  double peak_;
  long total_steps_;
  long warmup_steps_;
  double power_;
};

}  // namespace schemadst

#endif  // SCHEMADST_TRAIN_TRAIN_CONFIG_H_
