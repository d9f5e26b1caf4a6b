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

#include "schemadst/model/predictor.h"

#include <algorithm>
#include <limits>

#include "schemadst/common/error.h"

namespace schemadst {
namespace {

constexpr double kOraclePeak = 50.0;

TurnPredictions EmptyTurnPredictions(const DialogueTurn& turn) {
  TurnPredictions out;
  out.dialogue_id = turn.dialogue_id;
  out.turn_index = turn.turn_index;
  out.system_utterance = turn.system_utterance;
  out.user_utterance = turn.user_utterance;
  return out;
}

void RequireIntent(const ServiceSchema& schema, const std::string& name) {
  if (!schema.FindIntent(name)) {
    throw ConsistencyError("prediction for unknown intent " + schema.service_name + "." +
                           name);
  }
}

const SlotDef& RequireSlot(const ServiceSchema& schema, const std::string& name) {
  const SlotDef* slot = schema.FindSlot(name);
  if (!slot) {
    throw ConsistencyError("prediction for unknown slot " + schema.service_name + "." +
                           name);
  }
  return *slot;
}

}  // namespace

ServicePredictions AssembleServicePredictions(const ServiceSchema& schema,
                                              std::span<const QAExample> examples,
                                              std::span<const ExampleScores> scores) {
  if (examples.size() != scores.size()) {
    throw ConsistencyError("examples and scores differ in length");
  }
  ServicePredictions out;
  out.service = schema.service_name;
  for (const auto& intent : schema.intents) out.intent[intent.name] = 0.0;
  for (const auto& slot : schema.slots) {
    out.requested[slot.name] = 0.0;
    out.status[slot.name] = {1.0, 0.0, 0.0};
    if (slot.is_categorical) {
      auto& values = out.values[slot.name];
      for (const auto& v : slot.possible_values) values[v] = 0.0;
    }
  }

  for (std::size_t i = 0; i < examples.size(); ++i) {
    const QAExample& ex = examples[i];
    const ExampleScores& s = scores[i];
    if (ex.keys.service != schema.service_name) {
      throw ConsistencyError("example of service " + ex.keys.service +
                             " assembled into " + schema.service_name);
    }
    switch (ex.task) {
      case TaskKind::kIntent:
        RequireIntent(schema, ex.keys.element);
        out.intent[ex.keys.element] = s.positive;
        break;
      case TaskKind::kRequested:
        RequireSlot(schema, ex.keys.element);
        out.requested[ex.keys.element] = s.positive;
        break;
      case TaskKind::kStatus:
        RequireSlot(schema, ex.keys.element);
        out.status[ex.keys.element] = s.status;
        break;
      case TaskKind::kCatValue: {
        const SlotDef& slot = RequireSlot(schema, ex.keys.element);
        if (!slot.is_categorical || !ex.keys.value ||
            std::find(slot.possible_values.begin(), slot.possible_values.end(),
                      *ex.keys.value) == slot.possible_values.end()) {
          throw ConsistencyError("prediction for unknown value of " +
                                 schema.service_name + "." + slot.name);
        }
        out.values[slot.name][*ex.keys.value] = s.positive;
        break;
      }
      case TaskKind::kSpan: {
        const SlotDef& slot = RequireSlot(schema, ex.keys.element);
        if (slot.is_categorical) {
          throw ConsistencyError("span prediction for categorical slot " +
                                 schema.service_name + "." + slot.name);
        }
        SpanScores span;
        span.start_logits = s.start_logits;
        span.end_logits = s.end_logits;
        span.seq2_begin = ex.seq2_begin;
        span.seq2_end = ex.seq2_end;
        span.origins = ex.origins;
        out.spans[slot.name] = std::move(span);
        break;
      }
    }
  }
  return out;
}

template <typename T>
ExampleScores ScoresFromLogits(const ExampleLogits<T>& logits, const QAExample& example) {
  ExampleScores s;
  switch (example.task) {
    case TaskKind::kIntent:
    case TaskKind::kRequested:
    case TaskKind::kCatValue: {
      const auto& row = logits.classes[static_cast<int>(example.task)];
      s.positive = Softmax<T>(std::span<const T>(row))[1];
      break;
    }
    case TaskKind::kStatus: {
      const auto& row = logits.classes[static_cast<int>(TaskKind::kStatus)];
      const std::vector<double> p = Softmax<T>(std::span<const T>(row));
      std::copy_n(p.begin(), kNumStatuses, s.status.begin());
      break;
    }
    case TaskKind::kSpan:
      s.start_logits.assign(logits.start.begin(),
                            logits.start.begin() + example.valid_length);
      s.end_logits.assign(logits.end.begin(), logits.end.begin() + example.valid_length);
      break;
  }
  return s;
}

ExampleScores ScoresFromLabel(const QAExample& example) {
  ExampleScores s;
  switch (example.task) {
    case TaskKind::kIntent:
    case TaskKind::kRequested:
    case TaskKind::kCatValue:
      s.positive = std::get<BinaryLabel>(example.label).value ? 1.0 : 0.0;
      break;
    case TaskKind::kStatus:
      s.status[static_cast<int>(std::get<SlotStatus>(example.label))] = 1.0;
      break;
    case TaskKind::kSpan: {
      const SpanTarget target = std::get<SpanTarget>(example.label);
      s.start_logits.assign(example.valid_length, 0.0);
      s.end_logits.assign(example.valid_length, 0.0);
      s.start_logits[target.start] = kOraclePeak;
      s.end_logits[target.end] = kOraclePeak;
      break;
    }
  }
  return s;
}

template <typename T>
ModelPredictor<T>::ModelPredictor(const NluModel<T>& model, const ExampleBuilder& builder,
                                  int batch_size)
    : model_(model), builder_(builder), batch_size_(std::max(1, batch_size)) {}

template <typename T>
ServicePredictions ModelPredictor<T>::PredictService(const DialogueTurn& turn,
                                                     const std::string& service) const {
  BuildStats stats;
  const std::vector<QAExample> examples =
      builder_.BuildTurn(turn, service, nullptr, {}, &stats);
  std::vector<ExampleScores> scores;
  scores.reserve(examples.size());
  for (std::size_t begin = 0; begin < examples.size(); begin += batch_size_) {
    const std::size_t n = std::min<std::size_t>(batch_size_, examples.size() - begin);
    const std::span<const QAExample> batch(examples.data() + begin, n);
    const auto logits = model_.ForwardBatch(batch);
    for (std::size_t i = 0; i < n; ++i) {
      scores.push_back(ScoresFromLogits(logits[i], batch[i]));
    }
  }
  return AssembleServicePredictions(builder_.schema(service), examples, scores);
}

template <typename T>
TurnPredictions ModelPredictor<T>::Predict(const DialogueTurn& turn) const {
  TurnPredictions out = EmptyTurnPredictions(turn);
  for (const auto& frame : turn.frames) {
    out.services.push_back(PredictService(turn, frame.service));
  }
  return out;
}

std::vector<TurnPredictions> OraclePredictions(const Dialogue& dialogue,
                                               const ExampleBuilder& builder) {
  std::vector<TurnPredictions> out;
  std::map<std::string, SlotValueMap> previous;
  for (const auto& turn : dialogue.turns) {
    TurnPredictions turn_preds = EmptyTurnPredictions(turn);
    for (const auto& frame : turn.frames) {
      BuildStats stats;
      const std::vector<QAExample> examples =
          builder.BuildTurn(turn, frame.service, &frame, previous[frame.service], &stats);
      std::vector<ExampleScores> scores;
      scores.reserve(examples.size());
      for (const auto& ex : examples) scores.push_back(ScoresFromLabel(ex));
      turn_preds.services.push_back(
          AssembleServicePredictions(builder.schema(frame.service), examples, scores));
      previous[frame.service] = frame.state_slot_values;
    }
    out.push_back(std::move(turn_preds));
  }
  return out;
}

template ExampleScores ScoresFromLogits(const ExampleLogits<float>&, const QAExample&);
template ExampleScores ScoresFromLogits(const ExampleLogits<double>&, const QAExample&);
template class ModelPredictor<float>;
template class ModelPredictor<double>;

}  // namespace schemadst
