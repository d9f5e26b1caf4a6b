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

#ifndef SCHEMADST_TRAIN_TRAINER_H_
#define SCHEMADST_TRAIN_TRAINER_H_

#include <filesystem>
#include <functional>
#include <ostream>
#include <span>
#include <vector>

#include "schemadst/examples/qa_example.h"
#include "schemadst/model/checkpoint.h"
#include "schemadst/model/nlu_model.h"
#include "schemadst/train/train_config.h"

namespace schemadst {

struct EpochSummary {
  int epoch = 0;
  double train_loss = 0.0;  // mean of the epoch's step losses
  double dev_loss = 0.0;    // NaN without dev examples
  bool best = false;
};

struct TrainResult {
  long steps = 0;
  std::vector<double> step_losses;
  std::vector<EpochSummary> epochs;
  int best_epoch = -1;
};

struct TrainOutputs {
  // Best-dev checkpoint target; skipped when empty.
  std::filesystem::path checkpoint;
  VocabularyRef vocabulary;
  nlohmann::json checkpoint_extra = nlohmann::json::object();
  // JSONL metrics log: one record per step and one per epoch. Optional.
  std::ostream* log = nullptr;
  // Called after every epoch, e.g. for progress output.
  std::function<void(const EpochSummary&)> on_epoch;
};

// Mean evaluation loss over `examples`, evaluated in chunks.
template <typename T>
double EvaluateLoss(const NluModel<T>& model, std::span<const QAExample> examples);

// Shuffled mini-batch Adam with warmup + polynomial decay and global-norm
// clipping. After the last epoch the model holds the parameters of the epoch
// with the lowest dev loss (the last epoch when there is no dev set).
// Throws NumericError on a non-finite batch loss.
template <typename T>
TrainResult Train(const TrainConfig& config, std::span<const QAExample> train,
                  std::span<const QAExample> dev, NluModel<T>& model,
                  const TrainOutputs& outputs = {});

}  // namespace schemadst

#endif  // SCHEMADST_TRAIN_TRAINER_H_
