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

#include "schemadst/model/nlu_model.h"

#include <cmath>
#include <limits>

namespace schemadst {
namespace {

const char* HeadPrefix(int head) {
  static constexpr const char* kNames[] = {"heads.intent", "heads.requested",
                                           "heads.status", "heads.cat_value"};
  return kNames[head];
}

int ClassTarget(const QAExample& ex) {
  if (const auto* binary = std::get_if<BinaryLabel>(&ex.label)) return binary->value;
  if (const auto* status = std::get_if<SlotStatus>(&ex.label)) {
    return static_cast<int>(*status);
  }
  throw InputError("span label on a classification task");
}

TaskKind RequireActiveTask(const QAExample& ex) {
  auto active = ActiveTask(ex.loss_mask);
  if (!active) {
    throw InputError("invalid example " + ex.keys.dialogue_id + "/" +
                     std::to_string(ex.keys.turn_index) + " " + ex.keys.element +
                     ": loss mask is not one-hot");
  }
  return *active;
}

SpanTarget RequireSpanTarget(const QAExample& ex) {
  const auto* target = std::get_if<SpanTarget>(&ex.label);
  if (!target) throw InputError("SPAN example without a span label");
  if (target->start < 0 || target->end < 0 || target->start >= ex.valid_length ||
      target->end >= ex.valid_length) {
    throw InputError("span label outside the input");
  }
  return *target;
}

}  // namespace

nlohmann::json ModelConfig::ToJson() const {
  return {{"encoder", encoder.ToJson()},
          {"head_order", head_order == HeadActivationOrder::kTanhThenGelu
                             ? "tanh_gelu"
                             : "gelu_tanh"},
          {"seed", seed}};
}

ModelConfig ModelConfig::FromJson(const nlohmann::json& j) {
  ModelConfig c;
  c.encoder = ToyTransformerConfig::FromJson(j.value("encoder", nlohmann::json::object()));
  const std::string order = j.value("head_order", "tanh_gelu");
  if (order == "tanh_gelu") {
    c.head_order = HeadActivationOrder::kTanhThenGelu;
  } else if (order == "gelu_tanh") {
    c.head_order = HeadActivationOrder::kGeluThenTanh;
  } else {
    throw ConfigError("unknown head_order '" + order + "'");
  }
  c.seed = j.value("seed", std::uint64_t{0});
  return c;
}

template <typename T>
std::vector<double> Softmax(std::span<const T> logits) {
  std::vector<double> p(logits.size());
  if (logits.empty()) return p;
  double max = -std::numeric_limits<double>::infinity();
  for (T v : logits) max = std::max(max, static_cast<double>(v));
  double sum = 0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    p[i] = std::exp(static_cast<double>(logits[i]) - max);
    sum += p[i];
  }
  for (auto& v : p) v /= sum;
  return p;
}

template <typename T>
T CrossEntropy(std::span<const T> logits, int target, std::vector<T>* dlogits) {
  if (target < 0 || target >= static_cast<int>(logits.size())) {
    throw InputError("cross-entropy target " + std::to_string(target) +
                     " outside " + std::to_string(logits.size()) + " classes");
  }
  T max = logits[0];
  for (T v : logits) max = std::max(max, v);
  T sum = 0;
  for (T v : logits) sum += std::exp(v - max);
  const T log_z = max + std::log(sum);
  if (dlogits) {
    dlogits->resize(logits.size());
    for (std::size_t i = 0; i < logits.size(); ++i) {
      (*dlogits)[i] = std::exp(logits[i] - log_z);
    }
    (*dlogits)[target] -= T(1);
  }
  return log_z - logits[target];
}

template <typename T>
T ExampleLoss(const ExampleLogits<T>& logits, const QAExample& ex,
              ExampleLogits<T>* dlogits) {
  const TaskKind task = RequireActiveTask(ex);
  if (dlogits) {
    for (int h = 0; h < kNumClassHeads; ++h) {
      dlogits->classes[h].assign(logits.classes[h].size(), T(0));
    }
    dlogits->start.assign(logits.start.size(), T(0));
    dlogits->end.assign(logits.end.size(), T(0));
  }
  if (task != TaskKind::kSpan) {
    const int h = static_cast<int>(task);
    return CrossEntropy<T>(logits.classes[h], ClassTarget(ex),
                           dlogits ? &dlogits->classes[h] : nullptr);
  }
  const SpanTarget target = RequireSpanTarget(ex);
  const std::size_t n = ex.valid_length;
  std::vector<T> ds, de;
  const T a = CrossEntropy<T>(std::span<const T>(logits.start).first(n), target.start,
                              dlogits ? &ds : nullptr);
  const T b = CrossEntropy<T>(std::span<const T>(logits.end).first(n), target.end,
                              dlogits ? &de : nullptr);
  if (dlogits) {
    for (std::size_t i = 0; i < n; ++i) {
      dlogits->start[i] = T(0.5) * ds[i];
      dlogits->end[i] = T(0.5) * de[i];
    }
  }
  return T(0.5) * (a + b);
}

template <typename T>
T ComputeLoss(std::span<const ExampleLogits<T>> logits,
              std::span<const QAExample> examples) {
  if (logits.size() != examples.size()) {
    throw InputError("logits and examples differ in count");
  }
  if (examples.empty()) return T(0);
  T sum = 0;
  for (std::size_t i = 0; i < examples.size(); ++i) {
    sum += ExampleLoss(logits[i], examples[i]);
  }
  return sum / static_cast<T>(examples.size());
}

template <typename T>
void ClassificationHead<T>::Init(ParameterStore<T>& store, const std::string& prefix,
                                 int hidden, int classes, HeadActivationOrder head_order,
                                 Rng& rng) {
  order = head_order;
  first.Init(store, prefix + ".first", hidden, hidden, rng);
  second.Init(store, prefix + ".second", hidden, hidden, rng);
  third.Init(store, prefix + ".third", hidden, classes, rng);
}

namespace {

template <typename T>
Matrix<T> Activate(const Matrix<T>& x, bool tanh) {
  return tanh ? Matrix<T>(x.array().tanh().matrix()) : Gelu(x);
}

template <typename T>
Matrix<T> ActivateBackward(const Matrix<T>& pre, const Matrix<T>& post,
                           const Matrix<T>& dy, bool tanh) {
  return tanh ? TanhBackwardFromOutput(post, dy) : GeluBackward(pre, dy);
}

}  // namespace

template <typename T>
Matrix<T> ClassificationHead<T>::Forward(const ParameterStore<T>& store,
                                         const Matrix<T>& pooled, Cache* cache) const {
  const bool tanh_first = order == HeadActivationOrder::kTanhThenGelu;
  Matrix<T> pre1 = first.Forward(store, pooled);
  Matrix<T> act1 = Activate(pre1, tanh_first);
  Matrix<T> pre2 = second.Forward(store, act1);
  Matrix<T> act2 = Activate(pre2, !tanh_first);
  Matrix<T> logits = third.Forward(store, act2);
  if (cache) {
    cache->input = pooled;
    cache->pre1 = std::move(pre1);
    cache->act1 = std::move(act1);
    cache->pre2 = std::move(pre2);
    cache->act2 = std::move(act2);
  }
  return logits;
}

template <typename T>
Matrix<T> ClassificationHead<T>::Backward(const ParameterStore<T>& store,
                                          const Cache& cache, const Matrix<T>& dlogits,
                                          Gradients<T>& grads) const {
  const bool tanh_first = order == HeadActivationOrder::kTanhThenGelu;
  Matrix<T> d = third.Backward(store, cache.act2, dlogits, grads);
  d = ActivateBackward(cache.pre2, cache.act2, d, !tanh_first);
  d = second.Backward(store, cache.act1, d, grads);
  d = ActivateBackward(cache.pre1, cache.act1, d, tanh_first);
  return first.Backward(store, cache.input, d, grads);
}

template <typename T>
NluModel<T>::NluModel(const ModelConfig& config, EncoderFactory factory)
    : config_(config) {
  Rng rng(config.seed);
  if (factory) {
    encoder_ = factory(store_, rng);
  } else {
    encoder_ = std::make_unique<ToyTransformerEncoder<T>>(store_, config.encoder, rng);
  }
  const int hidden = encoder_->hidden_size();
  for (int h = 0; h < kNumClassHeads; ++h) {
    const int begin = store_.size();
    class_heads_[h].Init(store_, HeadPrefix(h), hidden, kClassHeadWidths[h],
                         config.head_order, rng);
    head_param_ranges_[h] = {begin, store_.size()};
  }
  const int begin = store_.size();
  span_head_.Init(store_, "heads.span", hidden, 2, rng);
  head_param_ranges_[static_cast<int>(TaskKind::kSpan)] = {begin, store_.size()};
}

template <typename T>
std::vector<int> NluModel<T>::HeadParameterIds(TaskKind task) const {
  std::vector<int> ids;
  const auto [begin, end] = head_param_ranges_[static_cast<int>(task)];
  for (int i = begin; i < end; ++i) ids.push_back(i);
  return ids;
}

template <typename T>
EncoderInput NluModel<T>::InputOf(const QAExample& ex) const {
  return {ex.token_ids, ex.segment_ids, ex.valid_length};
}

template <typename T>
ExampleLogits<T> NluModel<T>::Forward(const QAExample& ex) const {
  const EncoderOutput<T> enc = encoder_->Forward(store_, InputOf(ex), nullptr, nullptr);
  ExampleLogits<T> out;
  const Matrix<T> pooled = enc.pooled;
  for (int h = 0; h < kNumClassHeads; ++h) {
    const Matrix<T> logits = class_heads_[h].Forward(store_, pooled, nullptr);
    out.classes[h].assign(logits.data(), logits.data() + logits.size());
  }
  const Matrix<T> span = span_head_.Forward(store_, enc.token_states);
  out.start.resize(span.rows());
  out.end.resize(span.rows());
  for (Eigen::Index i = 0; i < span.rows(); ++i) {
    out.start[i] = span(i, 0);
    out.end[i] = span(i, 1);
  }
  return out;
}

template <typename T>
std::vector<ExampleLogits<T>> NluModel<T>::ForwardBatch(
    std::span<const QAExample> batch) const {
  std::size_t padded = 0;
  for (const auto& ex : batch) {
    padded = std::max(padded, std::max(ex.token_ids.size(),
                                       static_cast<std::size_t>(ex.valid_length)));
  }
  std::vector<ExampleLogits<T>> out;
  out.reserve(batch.size());
  for (const auto& ex : batch) {
    ExampleLogits<T> logits = Forward(ex);
    logits.start.resize(padded, -std::numeric_limits<T>::infinity());
    logits.end.resize(padded, -std::numeric_limits<T>::infinity());
    out.push_back(std::move(logits));
  }
  return out;
}

template <typename T>
T NluModel<T>::AccumulateGradients(const QAExample& ex, Gradients<T>& grads, T scale,
                                   Rng* dropout_rng) const {
  const TaskKind task = RequireActiveTask(ex);
  std::unique_ptr<EncoderCache> cache;
  const EncoderOutput<T> enc = encoder_->Forward(store_, InputOf(ex), dropout_rng, &cache);
  const int hidden = encoder_->hidden_size();
  if (task != TaskKind::kSpan) {
    const int h = static_cast<int>(task);
    typename ClassificationHead<T>::Cache head_cache;
    const Matrix<T> pooled = enc.pooled;
    const Matrix<T> logits = class_heads_[h].Forward(store_, pooled, &head_cache);
    std::vector<T> dl;
    const T loss = CrossEntropy<T>(std::span<const T>(logits.data(), logits.size()),
                                   ClassTarget(ex), &dl);
    Matrix<T> dlogits(1, dl.size());
    for (std::size_t i = 0; i < dl.size(); ++i) dlogits(0, i) = scale * dl[i];
    const Matrix<T> dpooled = class_heads_[h].Backward(store_, head_cache, dlogits, grads);
    encoder_->Backward(store_, *cache,
                       Matrix<T>::Zero(enc.token_states.rows(), hidden),
                       RowVector<T>(dpooled.row(0)), grads);
    return loss;
  }
  const SpanTarget target = RequireSpanTarget(ex);
  const Matrix<T> span = span_head_.Forward(store_, enc.token_states);
  const Eigen::Index n = span.rows();
  std::vector<T> start(n), end(n), ds, de;
  for (Eigen::Index i = 0; i < n; ++i) {
    start[i] = span(i, 0);
    end[i] = span(i, 1);
  }
  const T a = CrossEntropy<T>(start, target.start, &ds);
  const T b = CrossEntropy<T>(end, target.end, &de);
  Matrix<T> dspan(n, 2);
  for (Eigen::Index i = 0; i < n; ++i) {
    dspan(i, 0) = T(0.5) * scale * ds[i];
    dspan(i, 1) = T(0.5) * scale * de[i];
  }
  const Matrix<T> dtokens = span_head_.Backward(store_, enc.token_states, dspan, grads);
  encoder_->Backward(store_, *cache, dtokens, RowVector<T>::Zero(hidden), grads);
  return T(0.5) * (a + b);
}

template <typename T>
T NluModel<T>::Loss(std::span<const QAExample> batch) const {
  if (batch.empty()) return T(0);
  T sum = 0;
  for (const auto& ex : batch) sum += ExampleLoss(Forward(ex), ex);
  return sum / static_cast<T>(batch.size());
}

template struct ClassificationHead<float>;
template struct ClassificationHead<double>;
template class NluModel<float>;
template class NluModel<double>;
template float CrossEntropy<float>(std::span<const float>, int, std::vector<float>*);
template double CrossEntropy<double>(std::span<const double>, int, std::vector<double>*);
template float ExampleLoss<float>(const ExampleLogits<float>&, const QAExample&,
                                  ExampleLogits<float>*);
template double ExampleLoss<double>(const ExampleLogits<double>&, const QAExample&,
                                    ExampleLogits<double>*);
template float ComputeLoss<float>(std::span<const ExampleLogits<float>>,
                                  std::span<const QAExample>);
template double ComputeLoss<double>(std::span<const ExampleLogits<double>>,
                                    std::span<const QAExample>);
template std::vector<double> Softmax<float>(std::span<const float>);
template std::vector<double> Softmax<double>(std::span<const double>);

}  // namespace schemadst
