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

#include "schemadst/train/train_config.h"

#include <algorithm>
#include <cmath>

#include "schemadst/common/error.h"

namespace schemadst {

void TrainConfig::Validate() const {
  if (epochs <= 0) throw ConfigError("epochs must be positive");
  if (batch_size <= 0) throw ConfigError("batch_size must be positive");
  if (!(learning_rate > 0.0)) throw ConfigError("learning_rate must be positive");
  if (!(warmup_ratio >= 0.0 && warmup_ratio < 1.0)) {
    throw ConfigError("warmup_ratio must lie in [0, 1)");
  }
  if (!(decay_power > 0.0)) throw ConfigError("decay_power must be positive");
  if (!(clip_norm > 0.0)) throw ConfigError("clip_norm must be positive");
  if (!(adam.beta1 >= 0.0 && adam.beta1 < 1.0 && adam.beta2 >= 0.0 && adam.beta2 < 1.0)) {
    throw ConfigError("adam betas must lie in [0, 1)");
  }
  if (!(adam.epsilon > 0.0)) throw ConfigError("adam epsilon must be positive");
}

nlohmann::json TrainConfig::ToJson() const {
  return {{"epochs", epochs},
          {"batch_size", batch_size},
          {"learning_rate", learning_rate},
          {"warmup_ratio", warmup_ratio},
          {"decay_power", decay_power},
          {"clip_norm", clip_norm},
          {"adam", {{"beta1", adam.beta1}, {"beta2", adam.beta2}, {"epsilon", adam.epsilon}}},
          {"seed", seed}};
}

TrainConfig TrainConfig::FromJson(const nlohmann::json& j) {
  TrainConfig c;
  if (!j.is_object()) throw ConfigError("train config must be an object");
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "epochs") c.epochs = value.get<int>();
      else if (key == "batch_size") c.batch_size = value.get<int>();
      else if (key == "learning_rate") c.learning_rate = value.get<double>();
      else if (key == "warmup_ratio") c.warmup_ratio = value.get<double>();
      else if (key == "decay_power") c.decay_power = value.get<double>();
      else if (key == "clip_norm") c.clip_norm = value.get<double>();
      else if (key == "seed") c.seed = value.get<std::uint64_t>();
      else if (key == "adam") {
        c.adam.beta1 = value.value("beta1", c.adam.beta1);
        c.adam.beta2 = value.value("beta2", c.adam.beta2);
        c.adam.epsilon = value.value("epsilon", c.adam.epsilon);
      } else {
        throw ConfigError("unknown train config key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("train config: ") + e.what());
  }
  c.Validate();
  return c;
}

LrSchedule::LrSchedule(double peak, long total_steps, double warmup_ratio, double power)
    : peak_(peak),
      total_steps_(std::max(0L, total_steps)),
      warmup_steps_(static_cast<long>(std::floor(warmup_ratio * total_steps_))),
      power_(power) {}

double LrSchedule::At(long step) const {
  if (step < 0) return 0.0;
  if (step < warmup_steps_) {
    return peak_ * static_cast<double>(step) / static_cast<double>(warmup_steps_);
  }
  const long decay_steps = total_steps_ - warmup_steps_;
  if (decay_steps <= 0 || step >= total_steps_) return 0.0;
  const double remaining =
      1.0 - static_cast<double>(step - warmup_steps_) / static_cast<double>(decay_steps);
  return peak_ * std::pow(remaining, power_);
}

}  // namespace schemadst
