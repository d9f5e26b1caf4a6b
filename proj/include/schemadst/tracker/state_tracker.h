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

#ifndef SCHEMADST_TRACKER_STATE_TRACKER_H_
#define SCHEMADST_TRACKER_STATE_TRACKER_H_

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "schemadst/data/dialogue.h"
#include "schemadst/data/sgd_io.h"
#include "schemadst/model/predictions.h"
#include "schemadst/model/predictor.h"

namespace schemadst {

struct ServiceState {
  std::string active_intent = kNoneIntent;
  std::set<std::string> requested_slots;
  std::map<std::string, std::string> slot_values;

  bool operator==(const ServiceState&) const = default;
};

// Service name -> state; services not yet mentioned are absent.
using DialogueState = std::map<std::string, ServiceState>;

struct TrackerConfig {
  double intent_threshold = 0.5;
  double requested_threshold = 0.5;
  int max_answer_len = 30;  // tokens

  // Throws ConfigError unless thresholds are in (0, 1) and max_answer_len > 0.
  void Validate() const;
};

struct DecodedSpan {
  int start = 0;
  int end = 0;
  double score = 0.0;

  bool IsSentinel() const { return start == 0 && end == 0; }
};

// Best (s, e) with lo <= s <= e < hi and e - s < max_answer_len by
// start[s] + end[e], or the (0, 0) sentinel when it scores at least as high.
// An empty region yields the sentinel.
DecodedSpan DecodeSpan(std::span<const double> start_logits,
                       std::span<const double> end_logits, int lo, int hi,
                       int max_answer_len);

// Text of a decoded window, or nullopt for the sentinel and for windows that
// do not lie within a single utterance.
std::optional<std::string> SpanText(const DecodedSpan& span, const SpanScores& scores,
                                    const std::string& system_utterance,
                                    const std::string& user_utterance);

// One service's update rule. Pure.
ServiceState UpdateService(const ServiceState& previous, const ServicePredictions& preds,
                           const ServiceSchema& schema, const TurnPredictions& turn,
                           const TrackerConfig& config);

// Updates every service predicted this turn; other services carry over.
DialogueState Update(const DialogueState& previous, const TurnPredictions& preds,
                     const SchemaIndex& schemas, const TrackerConfig& config);

// Left-to-right fold over precomputed per-turn predictions.
std::vector<DialogueState> RunDialogue(std::span<const TurnPredictions> predictions,
                                       const SchemaIndex& schemas,
                                       const TrackerConfig& config);
std::vector<DialogueState> RunDialogue(const Dialogue& dialogue, const SchemaIndex& schemas,
                                       const TurnPredictor& predictor,
                                       const TrackerConfig& config);

// Per-turn gold state, taking the first listed alternative as the value.
std::vector<DialogueState> GoldStates(const Dialogue& dialogue);

// One JSON line per turn: {dialogue_id, turn_index, frames: [{service,
// active_intent, requested_slots, slot_values}]}. Only services with a frame
// in that turn are written, which is what per-frame scoring consumes.
nlohmann::json TurnStateToJson(const DialogueTurn& turn, const DialogueState& state);

// Predicted frames of a state file, keyed by (dialogue_id, turn_index).
struct PredictedFrame {
  std::string dialogue_id;
  int turn_index = 0;
  std::string service;
  ServiceState state;
};
std::vector<PredictedFrame> FramesFromStateJson(const nlohmann::json& line);

}  // namespace schemadst

#endif  // SCHEMADST_TRACKER_STATE_TRACKER_H_
