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

#include "schemadst/model/predictions.h"

#include "schemadst/common/error.h"

namespace schemadst {

const ServicePredictions* TurnPredictions::Find(const std::string& service) const {
  for (const auto& s : services) {
    if (s.service == service) return &s;
  }
  return nullptr;
}

nlohmann::json ToJson(const TurnPredictions& p) {
  nlohmann::json out = {{"dialogue_id", p.dialogue_id},
                        {"turn_index", p.turn_index},
                        {"system_utterance", p.system_utterance},
                        {"user_utterance", p.user_utterance},
                        {"services", nlohmann::json::array()}};
  for (const auto& s : p.services) {
    nlohmann::json spans = nlohmann::json::object();
    for (const auto& [slot, scores] : s.spans) {
      nlohmann::json origins = nlohmann::json::array();
      for (const auto& o : scores.origins) {
        origins.push_back({o.role ? RoleName(*o.role) : "", o.start_char, o.end_char});
      }
      spans[slot] = {{"start_logits", scores.start_logits},
                     {"end_logits", scores.end_logits},
                     {"seq2_begin", scores.seq2_begin},
                     {"seq2_end", scores.seq2_end},
                     {"origins", origins}};
    }
    nlohmann::json status = nlohmann::json::object();
    for (const auto& [slot, probs] : s.status) status[slot] = probs;
    out["services"].push_back({{"service", s.service},
                               {"intent", s.intent},
                               {"requested", s.requested},
                               {"status", status},
                               {"values", s.values},
                               {"spans", spans}});
  }
  return out;
}

TurnPredictions TurnPredictionsFromJson(const nlohmann::json& j) {
  try {
    TurnPredictions p;
    p.dialogue_id = j.at("dialogue_id").get<std::string>();
    p.turn_index = j.at("turn_index").get<int>();
    p.system_utterance = j.at("system_utterance").get<std::string>();
    p.user_utterance = j.at("user_utterance").get<std::string>();
    for (const auto& s : j.at("services")) {
      ServicePredictions sp;
      sp.service = s.at("service").get<std::string>();
      sp.intent = s.at("intent").get<std::map<std::string, double>>();
      sp.requested = s.at("requested").get<std::map<std::string, double>>();
      for (const auto& [slot, probs] : s.at("status").items()) {
        sp.status[slot] = probs.get<std::array<double, kNumStatuses>>();
      }
      sp.values = s.at("values").get<std::map<std::string, std::map<std::string, double>>>();
      for (const auto& [slot, span] : s.at("spans").items()) {
        SpanScores scores;
        scores.start_logits = span.at("start_logits").get<std::vector<double>>();
        scores.end_logits = span.at("end_logits").get<std::vector<double>>();
        scores.seq2_begin = span.at("seq2_begin").get<int>();
        scores.seq2_end = span.at("seq2_end").get<int>();
        for (const auto& o : span.at("origins")) {
          TokenOrigin origin;
          const std::string role = o.at(0).get<std::string>();
          if (!role.empty()) origin.role = ParseRole(role);
          origin.start_char = o.at(1).get<int>();
          origin.end_char = o.at(2).get<int>();
          scores.origins.push_back(origin);
        }
        sp.spans[slot] = std::move(scores);
      }
      p.services.push_back(std::move(sp));
    }
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("turn predictions: ") + e.what());
  }
}

}  // namespace schemadst
