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

#ifndef SCHEMADST_DATA_DIALOGUE_H_
#define SCHEMADST_DATA_DIALOGUE_H_

#include <map>
#include <set>
#include <string>
#include <vector>

namespace schemadst {

inline constexpr char kNoneIntent[] = "NONE";
inline constexpr char kDontcareValue[] = "dontcare";

enum class UtteranceRole { kSystem = 0, kUser = 1 };

const char* RoleName(UtteranceRole role);
UtteranceRole ParseRole(const std::string& name);

struct SpanLabel {
  std::string slot;
  UtteranceRole role = UtteranceRole::kUser;
  int start_char = 0;  // inclusive
  int end_char = 0;    // exclusive

  bool operator==(const SpanLabel&) const = default;
};

// Slot name -> acceptable value strings (first entry is canonical).
using SlotValueMap = std::map<std::string, std::vector<std::string>>;

struct FrameAnnotation {
  std::string service;
  std::string active_intent = kNoneIntent;
  std::set<std::string> requested_slots;
  SlotValueMap state_slot_values;  // cumulative gold state
  std::vector<SpanLabel> turn_spans;

  bool operator==(const FrameAnnotation&) const = default;
};

// One system+user exchange. The system half is empty on the first turn.
struct DialogueTurn {
  std::string dialogue_id;
  int turn_index = 0;
  std::string system_utterance;
  std::string user_utterance;
  std::vector<FrameAnnotation> frames;

  const std::string& Utterance(UtteranceRole role) const {
    return role == UtteranceRole::kSystem ? system_utterance : user_utterance;
  }
  const FrameAnnotation* FindFrame(const std::string& service) const;

  bool operator==(const DialogueTurn&) const = default;
};

struct Dialogue {
  std::string dialogue_id;
  std::vector<std::string> services;
  std::vector<DialogueTurn> turns;

  bool operator==(const Dialogue&) const = default;
};

}  // namespace schemadst

#endif  // SCHEMADST_DATA_DIALOGUE_H_
