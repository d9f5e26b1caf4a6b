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

#include "schemadst/tracker/state_tracker.h"

#include <limits>

#include "schemadst/common/error.h"

namespace schemadst {

void TrackerConfig::Validate() const {
  auto in_open_unit = [](double v) { return v > 0.0 && v < 1.0; };
  if (!in_open_unit(intent_threshold) || !in_open_unit(requested_threshold)) {
    throw ConfigError("tracker thresholds must lie in (0, 1)");
  }
  if (max_answer_len <= 0) throw ConfigError("max_answer_len must be positive");
}

DecodedSpan DecodeSpan(std::span<const double> start_logits,
                       std::span<const double> end_logits, int lo, int hi,
                       int max_answer_len) {
  DecodedSpan best;
  if (start_logits.empty() || end_logits.empty()) return best;
  best.score = start_logits[0] + end_logits[0];
  const int n = static_cast<int>(std::min(start_logits.size(), end_logits.size()));
  lo = std::max(lo, 1);
  hi = std::min(hi, n);
  for (int s = lo; s < hi; ++s) {
    const int last = std::min(hi, s + max_answer_len);
    for (int e = s; e < last; ++e) {
      const double score = start_logits[s] + end_logits[e];
      if (score > best.score) best = {s, e, score};
    }
  }
  return best;
}

std::optional<std::string> SpanText(const DecodedSpan& span, const SpanScores& scores,
                                    const std::string& system_utterance,
                                    const std::string& user_utterance) {
  if (span.IsSentinel()) return std::nullopt;
  const int n = static_cast<int>(scores.origins.size());
  if (span.start >= n || span.end >= n) return std::nullopt;
  const TokenOrigin& first = scores.origins[span.start];
  const TokenOrigin& last = scores.origins[span.end];
  if (!first.role || first.role != last.role) return std::nullopt;
  const std::string& text =
      *first.role == UtteranceRole::kSystem ? system_utterance : user_utterance;
  if (last.end_char > static_cast<int>(text.size()) || first.start_char > last.end_char) {
    throw ConsistencyError("span offsets outside utterance");
  }
  return text.substr(first.start_char, last.end_char - first.start_char);
}

ServiceState UpdateService(const ServiceState& previous, const ServicePredictions& preds,
                           const ServiceSchema& schema, const TurnPredictions& turn,
                           const TrackerConfig& config) {
  auto mismatch = [&](const std::string& what) {
    return ConsistencyError("predictions for " + schema.service_name + " lack " + what);
  };
  ServiceState next = previous;

  next.active_intent = kNoneIntent;
  double best_intent = -1.0;
  for (const auto& intent : schema.intents) {
    auto it = preds.intent.find(intent.name);
    if (it == preds.intent.end()) throw mismatch("intent " + intent.name);
    if (it->second > best_intent) {
      best_intent = it->second;
      if (best_intent > config.intent_threshold) next.active_intent = intent.name;
    }
  }

  next.requested_slots.clear();
  for (const auto& slot : schema.slots) {
    auto req = preds.requested.find(slot.name);
    if (req == preds.requested.end()) throw mismatch("requested " + slot.name);
    if (req->second > config.requested_threshold) next.requested_slots.insert(slot.name);

    auto st = preds.status.find(slot.name);
    if (st == preds.status.end()) throw mismatch("status " + slot.name);
    int status = 0;
    for (int k = 1; k < kNumStatuses; ++k) {
      if (st->second[k] > st->second[status]) status = k;
    }
    switch (static_cast<SlotStatus>(status)) {
      case SlotStatus::kNone:
        break;
      case SlotStatus::kDontcare:
        next.slot_values[slot.name] = kDontcareValue;
        break;
      case SlotStatus::kActive:
        if (slot.is_categorical) {
          auto values = preds.values.find(slot.name);
          if (values == preds.values.end()) throw mismatch("values " + slot.name);
          const std::string* best = nullptr;
          double best_score = 0.0;
          for (const auto& v : slot.possible_values) {
            auto it = values->second.find(v);
            if (it == values->second.end()) throw mismatch("value " + slot.name + "=" + v);
            if (!best || it->second > best_score) {
              best = &v;
              best_score = it->second;
            }
          }
          if (best) next.slot_values[slot.name] = *best;
        } else {
          auto span = preds.spans.find(slot.name);
          if (span == preds.spans.end()) break;  // query was unbuildable
          const SpanScores& scores = span->second;
          const DecodedSpan decoded =
              DecodeSpan(scores.start_logits, scores.end_logits, scores.seq2_begin,
                         scores.seq2_end, config.max_answer_len);
          if (auto text = SpanText(decoded, scores, turn.system_utterance,
                                   turn.user_utterance)) {
            next.slot_values[slot.name] = *text;
          }
        }
        break;
    }
  }
  return next;
}

DialogueState Update(const DialogueState& previous, const TurnPredictions& preds,
                     const SchemaIndex& schemas, const TrackerConfig& config) {
  DialogueState next = previous;
  for (const auto& service_preds : preds.services) {
    auto it = schemas.find(service_preds.service);
    if (it == schemas.end()) {
      throw ConsistencyError("predictions for unknown service " + service_preds.service);
    }
    auto prev = previous.find(service_preds.service);
    const ServiceState empty;
    next[service_preds.service] =
        UpdateService(prev == previous.end() ? empty : prev->second, service_preds,
                      *it->second, preds, config);
  }
  return next;
}

std::vector<DialogueState> RunDialogue(std::span<const TurnPredictions> predictions,
                                       const SchemaIndex& schemas,
                                       const TrackerConfig& config) {
  std::vector<DialogueState> states;
  states.reserve(predictions.size());
  DialogueState state;
  for (const auto& preds : predictions) {
    state = Update(state, preds, schemas, config);
    states.push_back(state);
  }
  return states;
}

std::vector<DialogueState> RunDialogue(const Dialogue& dialogue, const SchemaIndex& schemas,
                                       const TurnPredictor& predictor,
                                       const TrackerConfig& config) {
  std::vector<DialogueState> states;
  states.reserve(dialogue.turns.size());
  DialogueState state;
  for (const auto& turn : dialogue.turns) {
    state = Update(state, predictor.Predict(turn), schemas, config);
    states.push_back(state);
  }
  return states;
}

std::vector<DialogueState> GoldStates(const Dialogue& dialogue) {
  std::vector<DialogueState> states;
  DialogueState state;
  for (const auto& turn : dialogue.turns) {
    for (const auto& frame : turn.frames) {
      ServiceState& s = state[frame.service];
      s.active_intent = frame.active_intent;
      s.requested_slots = frame.requested_slots;
      s.slot_values.clear();
      for (const auto& [slot, values] : frame.state_slot_values) {
        if (!values.empty()) s.slot_values[slot] = values.front();
      }
    }
    states.push_back(state);
  }
  return states;
}

nlohmann::json TurnStateToJson(const DialogueTurn& turn, const DialogueState& state) {
  nlohmann::json frames = nlohmann::json::array();
  for (const auto& frame : turn.frames) {
    auto it = state.find(frame.service);
    const ServiceState empty;
    const ServiceState& s = it == state.end() ? empty : it->second;
    frames.push_back({{"service", frame.service},
                      {"active_intent", s.active_intent},
                      {"requested_slots", s.requested_slots},
                      {"slot_values", s.slot_values}});
  }
  return {{"dialogue_id", turn.dialogue_id},
          {"turn_index", turn.turn_index},
          {"frames", frames}};
}

std::vector<PredictedFrame> FramesFromStateJson(const nlohmann::json& line) {
  try {
    std::vector<PredictedFrame> out;
    const std::string dialogue_id = line.at("dialogue_id").get<std::string>();
    const int turn_index = line.at("turn_index").get<int>();
    for (const auto& f : line.at("frames")) {
      PredictedFrame frame;
      frame.dialogue_id = dialogue_id;
      frame.turn_index = turn_index;
      frame.service = f.at("service").get<std::string>();
      frame.state.active_intent = f.at("active_intent").get<std::string>();
      frame.state.requested_slots =
          f.at("requested_slots").get<std::set<std::string>>();
      frame.state.slot_values =
          f.at("slot_values").get<std::map<std::string, std::string>>();
      out.push_back(std::move(frame));
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("state line: ") + e.what());
  }
}

}  // namespace schemadst
