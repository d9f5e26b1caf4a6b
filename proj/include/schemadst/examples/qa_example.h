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

#ifndef SCHEMADST_EXAMPLES_QA_EXAMPLE_H_
#define SCHEMADST_EXAMPLES_QA_EXAMPLE_H_

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "schemadst/data/dialogue.h"

namespace schemadst {

enum class TaskKind { kIntent = 0, kRequested = 1, kStatus = 2, kCatValue = 3, kSpan = 4 };
inline constexpr int kNumTasks = 5;
inline constexpr std::array<TaskKind, kNumTasks> kAllTasks = {
    TaskKind::kIntent, TaskKind::kRequested, TaskKind::kStatus,
    TaskKind::kCatValue, TaskKind::kSpan};

const char* TaskName(TaskKind task);
TaskKind ParseTask(const std::string& name);

enum class SlotStatus { kNone = 0, kDontcare = 1, kActive = 2 };
inline constexpr int kNumStatuses = 3;

const char* StatusName(SlotStatus status);
SlotStatus ParseStatus(const std::string& name);

// Token indices into the full input; (0, 0) points at [CLS] and means "no
// span in this turn".
struct SpanTarget {
  int start = 0;
  int end = 0;

  bool IsSentinel() const { return start == 0 && end == 0; }
  bool operator==(const SpanTarget&) const = default;
};

struct BinaryLabel {
  int value = 0;
  bool operator==(const BinaryLabel&) const = default;
};

using LabelPayload = std::variant<BinaryLabel, SlotStatus, SpanTarget>;

struct ExampleKeys {
  std::string service;
  std::string element;  // intent or slot name
  std::optional<std::string> value;  // categorical value (CAT_VALUE only)
  std::string dialogue_id;
  int turn_index = 0;

  bool operator==(const ExampleKeys&) const = default;
};

// Where a token of the input came from. Only sequence-2 tokens carry a role.
struct TokenOrigin {
  std::optional<UtteranceRole> role;
  int start_char = 0;
  int end_char = 0;

  bool operator==(const TokenOrigin&) const = default;
};

struct QAExample {
  TaskKind task = TaskKind::kIntent;
  std::vector<int> token_ids;
  std::vector<int> segment_ids;
  int valid_length = 0;
  LabelPayload label;
  std::array<int, kNumTasks> loss_mask{};
  ExampleKeys keys;

  // Not serialized: sequence-2 bounds [seq2_begin, seq2_end) and per-token
  // origins, needed to turn predicted token windows back into text.
  int seq2_begin = 0;
  int seq2_end = 0;
  std::vector<TokenOrigin> origins;
};

// The task whose loss is active, or nullopt for a mask that is not one-hot.
std::optional<TaskKind> ActiveTask(const std::array<int, kNumTasks>& mask);

// Throws ValidationError if any QAExample invariant is broken.
void CheckExampleInvariants(const QAExample& example, int cls_id, int sep_id,
                            int max_seq_len);

}  // namespace schemadst

#endif  // SCHEMADST_EXAMPLES_QA_EXAMPLE_H_
