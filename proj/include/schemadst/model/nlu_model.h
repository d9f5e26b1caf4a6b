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

#ifndef SCHEMADST_MODEL_NLU_MODEL_H_
#define SCHEMADST_MODEL_NLU_MODEL_H_

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "schemadst/examples/qa_example.h"
#include "schemadst/model/encoder.h"
#include "schemadst/model/layers.h"
#include "schemadst/model/toy_transformer.h"

namespace schemadst {

// Which activation follows the first of the three head layers.
enum class HeadActivationOrder { kTanhThenGelu, kGeluThenTanh };

// Sequence-classification heads, in TaskKind order.
inline constexpr int kNumClassHeads = 4;
inline constexpr std::array<int, kNumClassHeads> kClassHeadWidths = {2, 2, kNumStatuses, 2};

struct ModelConfig {
  ToyTransformerConfig encoder;
  HeadActivationOrder head_order = HeadActivationOrder::kTanhThenGelu;
  std::uint64_t seed = 0;

  nlohmann::json ToJson() const;
  static ModelConfig FromJson(const nlohmann::json& j);
};

// Raw scores of all five heads for one example. start/end have one entry per
// (padded) position; padding is -infinity.
template <typename T>
struct ExampleLogits {
  std::array<std::vector<T>, kNumClassHeads> classes;
  std::vector<T> start;
  std::vector<T> end;
};

// Linear -> act -> Linear -> act -> Linear over the pooled state.
template <typename T>
struct ClassificationHead {
  Linear<T> first, second, third;
  HeadActivationOrder order = HeadActivationOrder::kTanhThenGelu;

  struct Cache {
    Matrix<T> input, pre1, act1, pre2, act2;
  };

  void Init(ParameterStore<T>& store, const std::string& prefix, int hidden, int classes,
            HeadActivationOrder head_order, Rng& rng);
  Matrix<T> Forward(const ParameterStore<T>& store, const Matrix<T>& pooled,
                    Cache* cache) const;
  Matrix<T> Backward(const ParameterStore<T>& store, const Cache& cache,
                     const Matrix<T>& dlogits, Gradients<T>& grads) const;
};

// Single shared encoder plus four classification heads and a span head.
template <typename T>
class NluModel {
 public:
  using EncoderFactory =
      std::function<std::unique_ptr<Encoder<T>>(ParameterStore<T>&, Rng&)>;

  // Builds the toy transformer from config.encoder unless a factory for a
  // different encoder is supplied.
  explicit NluModel(const ModelConfig& config, EncoderFactory factory = {});

  NluModel(const NluModel&) = delete;
  NluModel& operator=(const NluModel&) = delete;

  // Evaluation-mode forward of every head.
  ExampleLogits<T> Forward(const QAExample& example) const;
  // Pads start/end logits to the longest example with -infinity.
  std::vector<ExampleLogits<T>> ForwardBatch(std::span<const QAExample> batch) const;

  // Adds scale * d(loss)/d(params) of the example's active task to `grads`
  // and returns the unscaled loss. Training mode when `dropout_rng` is set.
  T AccumulateGradients(const QAExample& example, Gradients<T>& grads, T scale,
                        Rng* dropout_rng) const;

  // Mean evaluation-mode loss.
  T Loss(std::span<const QAExample> batch) const;

  ParameterStore<T>& store() { return store_; }
  const ParameterStore<T>& store() const { return store_; }
  const Encoder<T>& encoder() const { return *encoder_; }
  const ModelConfig& config() const { return config_; }

  // Parameter ids owned by one task's head.
  std::vector<int> HeadParameterIds(TaskKind task) const;

 private:
  EncoderInput InputOf(const QAExample& example) const;

  ModelConfig config_;
  ParameterStore<T> store_;
  std::unique_ptr<Encoder<T>> encoder_;
  std::array<ClassificationHead<T>, kNumClassHeads> class_heads_;
  Linear<T> span_head_;  // hidden -> 2 (start, end)
  std::array<std::pair<int, int>, kNumTasks> head_param_ranges_{};
};

// Cross-entropy of logits[0, n) against `target`; writes softmax - onehot
// into `dlogits` when given.
template <typename T>
T CrossEntropy(std::span<const T> logits, int target, std::vector<T>* dlogits);

// Loss of the single active head picked by the loss mask. For SPAN it is the
// mean of the start and end cross-entropies over the valid positions.
template <typename T>
T ExampleLoss(const ExampleLogits<T>& logits, const QAExample& example,
              ExampleLogits<T>* dlogits = nullptr);

// Mean of the per-example active losses.
template <typename T>
T ComputeLoss(std::span<const ExampleLogits<T>> logits,
              std::span<const QAExample> examples);

// Numerically stable softmax of logits[0, n).
template <typename T>
std::vector<double> Softmax(std::span<const T> logits);

extern template class NluModel<float>;
extern template class NluModel<double>;

}  // namespace schemadst

#endif  // SCHEMADST_MODEL_NLU_MODEL_H_
