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

#include "schemadst/train/trainer.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "schemadst/common/error.h"
#include "schemadst/common/random.h"
#include "schemadst/train/optimizer.h"

namespace schemadst {
namespace {

constexpr std::uint64_t kShuffleStream = 0x5348554646ULL;
constexpr std::uint64_t kDropoutStream = 0x44524f50ULL;
constexpr int kEvalChunk = 256;
constexpr std::size_t kMaxReportedKeys = 4;

std::string DescribeBatch(std::span<const QAExample* const> batch) {
  std::ostringstream out;
  for (std::size_t i = 0; i < batch.size() && i < kMaxReportedKeys; ++i) {
    const ExampleKeys& k = batch[i]->keys;
    if (i > 0) out << ", ";
    out << TaskName(batch[i]->task) << " " << k.dialogue_id << "/" << k.turn_index << "/"
        << k.service << "/" << k.element;
    if (k.value) out << "=" << *k.value;
  }
  if (batch.size() > kMaxReportedKeys) out << ", ...";
  return out.str();
}

nlohmann::json NullableNumber(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

}  // namespace

template <typename T>
double EvaluateLoss(const NluModel<T>& model, std::span<const QAExample> examples) {
  if (examples.empty()) return std::numeric_limits<double>::quiet_NaN();
  double total = 0.0;
  for (std::size_t begin = 0; begin < examples.size(); begin += kEvalChunk) {
    const std::size_t n = std::min<std::size_t>(kEvalChunk, examples.size() - begin);
    total += static_cast<double>(model.Loss(examples.subspan(begin, n))) * n;
  }
  return total / examples.size();
}

template <typename T>
TrainResult Train(const TrainConfig& config, std::span<const QAExample> train,
                  std::span<const QAExample> dev, NluModel<T>& model,
                  const TrainOutputs& outputs) {
  config.Validate();
  if (train.empty()) throw InputError("no training examples");
  const long steps_per_epoch =
      (static_cast<long>(train.size()) + config.batch_size - 1) / config.batch_size;
  const LrSchedule schedule(config.learning_rate, steps_per_epoch * config.epochs,
                            config.warmup_ratio, config.decay_power);

  ParameterStore<T>& store = model.store();
  Adam<T> adam(store, config.adam);
  Gradients<T> grads = store.ZeroGradients();
  std::vector<Matrix<T>> best_params;
  double best_dev = std::numeric_limits<double>::infinity();

  TrainResult result;
  std::vector<std::size_t> order(train.size());
  std::vector<const QAExample*> batch;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng shuffle_rng(MixSeed(MixSeed(config.seed, kShuffleStream), epoch));
    shuffle_rng.Shuffle(order);

    double epoch_loss = 0.0;
    for (long b = 0; b < steps_per_epoch; ++b) {
      const long step = result.steps;
      const std::size_t begin = b * config.batch_size;
      const std::size_t end = std::min(order.size(), begin + config.batch_size);
      batch.clear();
      for (std::size_t i = begin; i < end; ++i) batch.push_back(&train[order[i]]);

      ZeroFill(grads);
      const T scale = static_cast<T>(1.0 / batch.size());
      double loss = 0.0;
      for (std::size_t i = 0; i < batch.size(); ++i) {
        Rng dropout_rng(MixSeed(MixSeed(config.seed, kDropoutStream),
                                static_cast<std::uint64_t>(step) * 1000003ULL + i));
        loss += static_cast<double>(
            model.AccumulateGradients(*batch[i], grads, scale, &dropout_rng));
      }
      loss /= batch.size();
      const double lr = schedule.At(step);
      if (!std::isfinite(loss)) {
        std::ostringstream msg;
        msg << "non-finite loss at step " << step << " (lr " << lr
            << "), batch: " << DescribeBatch(batch);
        throw NumericError(msg.str());
      }
      const double grad_norm = ClipGlobalNorm(grads, config.clip_norm);
      adam.Step(store, grads, lr);

      result.step_losses.push_back(loss);
      epoch_loss += loss;
      ++result.steps;
      if (outputs.log) {
        *outputs.log << nlohmann::json{{"type", "step"},
                                       {"epoch", epoch},
                                       {"step", step},
                                       {"lr", lr},
                                       {"loss", loss},
                                       {"grad_norm", NullableNumber(grad_norm)}}
                            .dump()
                     << "\n";
      }
    }

    EpochSummary summary;
    summary.epoch = epoch;
    summary.train_loss = epoch_loss / steps_per_epoch;
    summary.dev_loss = EvaluateLoss(model, dev);
    const bool is_best = dev.empty() || summary.dev_loss < best_dev;
    if (is_best) {
      best_dev = dev.empty() ? best_dev : summary.dev_loss;
      result.best_epoch = epoch;
      best_params.clear();
      for (int i = 0; i < store.size(); ++i) best_params.push_back(store.value(i));
      if (!outputs.checkpoint.empty()) {
        nlohmann::json extra = outputs.checkpoint_extra;
        extra["epoch"] = epoch;
        extra["dev_loss"] = NullableNumber(summary.dev_loss);
        SaveCheckpoint(outputs.checkpoint, model, outputs.vocabulary, extra);
      }
    }
    summary.best = is_best;
    if (outputs.log) {
      *outputs.log << nlohmann::json{{"type", "epoch"},
                                     {"epoch", epoch},
                                     {"train_loss", summary.train_loss},
                                     {"dev_loss", NullableNumber(summary.dev_loss)},
                                     {"best", is_best}}
                          .dump()
                   << "\n";
      outputs.log->flush();
    }
    result.epochs.push_back(summary);
    if (outputs.on_epoch) outputs.on_epoch(summary);
  }

  for (int i = 0; i < store.size(); ++i) store.value(i) = best_params[i];
  return result;
}

template double EvaluateLoss(const NluModel<float>&, std::span<const QAExample>);
template double EvaluateLoss(const NluModel<double>&, std::span<const QAExample>);
template TrainResult Train(const TrainConfig&, std::span<const QAExample>,
                           std::span<const QAExample>, NluModel<float>&,
                           const TrainOutputs&);
template TrainResult Train(const TrainConfig&, std::span<const QAExample>,
                           std::span<const QAExample>, NluModel<double>&,
                           const TrainOutputs&);

}  // namespace schemadst
