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

#ifndef SCHEMADST_MODEL_PREDICTOR_H_
#define SCHEMADST_MODEL_PREDICTOR_H_

#include <span>
#include <string>
#include <vector>

#include "schemadst/data/dialogue.h"
#include "schemadst/examples/example_builder.h"
#include "schemadst/model/nlu_model.h"
#include "schemadst/model/predictions.h"

namespace schemadst {

// Per-example scores in probability space, the common currency of model and
// oracle predictions.
struct ExampleScores {
  double positive = 0.0;  // INTENT, REQUESTED, CAT_VALUE
  std::array<double, kNumStatuses> status{};
  std::vector<double> start_logits;
  std::vector<double> end_logits;
};

// Assembles one service's predictions. Schema elements without an example
// (e.g. dropped as unbuildable) get neutral scores: inactive, not requested,
// status none, no span. An example naming an element the schema does not
// have throws ConsistencyError.
ServicePredictions AssembleServicePredictions(const ServiceSchema& schema,
                                              std::span<const QAExample> examples,
                                              std::span<const ExampleScores> scores);

class TurnPredictor {
 public:
  virtual ~TurnPredictor() = default;
  // Predictions for every service with a frame in `turn`.
  virtual TurnPredictions Predict(const DialogueTurn& turn) const = 0;
};

// Runs the NLU model over all per-turn examples in batches of `batch_size`.
// The queries are independent, so batching does not change the result.
template <typename T>
class ModelPredictor : public TurnPredictor {
 public:
  ModelPredictor(const NluModel<T>& model, const ExampleBuilder& builder,
                 int batch_size = 64);

  TurnPredictions Predict(const DialogueTurn& turn) const override;
  ServicePredictions PredictService(const DialogueTurn& turn,
                                    const std::string& service) const;

 private:
  const NluModel<T>& model_;
  const ExampleBuilder& builder_;
  int batch_size_;
};

// Converts logits of one example to scores.
template <typename T>
ExampleScores ScoresFromLogits(const ExampleLogits<T>& logits, const QAExample& example);

// Scores that reproduce the gold labels exactly: probability 1 on the gold
// class and span logits peaked at the gold window.
ExampleScores ScoresFromLabel(const QAExample& example);

// Gold labels of a whole dialogue turned into predictions, one per turn.
std::vector<TurnPredictions> OraclePredictions(const Dialogue& dialogue,
                                               const ExampleBuilder& builder);

extern template class ModelPredictor<float>;
extern template class ModelPredictor<double>;

}  // namespace schemadst

#endif  // SCHEMADST_MODEL_PREDICTOR_H_
