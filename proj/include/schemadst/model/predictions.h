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

#ifndef SCHEMADST_MODEL_PREDICTIONS_H_
#define SCHEMADST_MODEL_PREDICTIONS_H_

#include <array>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "schemadst/examples/qa_example.h"

namespace schemadst {

// Start/end scores of one span query plus what is needed to map a token
// window back to text.
struct SpanScores {
  std::vector<double> start_logits;
  std::vector<double> end_logits;
  int seq2_begin = 0;
  int seq2_end = 0;
  std::vector<TokenOrigin> origins;
};

struct ServicePredictions {
  std::string service;
  std::map<std::string, double> intent;     // P(intent is active)
  std::map<std::string, double> requested;  // P(slot is requested)
  std::map<std::string, std::array<double, kNumStatuses>> status;
  std::map<std::string, std::map<std::string, double>> values;  // categorical
  std::map<std::string, SpanScores> spans;                      // non-categorical
};

struct TurnPredictions {
  std::string dialogue_id;
  int turn_index = 0;
  std::string system_utterance;
  std::string user_utterance;
  std::vector<ServicePredictions> services;

  const ServicePredictions* Find(const std::string& service) const;
};

nlohmann::json ToJson(const TurnPredictions& predictions);
TurnPredictions TurnPredictionsFromJson(const nlohmann::json& j);

}  // namespace schemadst

#endif  // SCHEMADST_MODEL_PREDICTIONS_H_
