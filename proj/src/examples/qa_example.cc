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

#include "schemadst/examples/qa_example.h"

#include <algorithm>

#include "schemadst/common/error.h"

namespace schemadst {

const char* TaskName(TaskKind task) {
  switch (task) {
    case TaskKind::kIntent: return "INTENT";
    case TaskKind::kRequested: return "REQUESTED";
    case TaskKind::kStatus: return "STATUS";
    case TaskKind::kCatValue: return "CAT_VALUE";
    case TaskKind::kSpan: return "SPAN";
  }
  return "?";
}

TaskKind ParseTask(const std::string& name) {
  for (TaskKind task : kAllTasks) {
    if (name == TaskName(task)) return task;
  }
  throw ParseError("unknown task '" + name + "'");
}

const char* StatusName(SlotStatus status) {
  switch (status) {
    case SlotStatus::kNone: return "none";
    case SlotStatus::kDontcare: return "dontcare";
    case SlotStatus::kActive: return "active";
  }
  return "?";
}

SlotStatus ParseStatus(const std::string& name) {
  if (name == "none") return SlotStatus::kNone;
  if (name == "dontcare") return SlotStatus::kDontcare;
  if (name == "active") return SlotStatus::kActive;
  throw ParseError("unknown slot status '" + name + "'");
}

std::optional<TaskKind> ActiveTask(const std::array<int, kNumTasks>& mask) {
  std::optional<TaskKind> active;
  for (int t = 0; t < kNumTasks; ++t) {
    if (mask[t] == 0) continue;
    if (mask[t] != 1 || active) return std::nullopt;
    active = static_cast<TaskKind>(t);
  }
  return active;
}

void CheckExampleInvariants(const QAExample& ex, int cls_id, int sep_id,
                            int max_seq_len) {
  auto fail = [&](const std::string& what) {
    throw ValidationError(std::string(TaskName(ex.task)) + " example " +
                          ex.keys.dialogue_id + "/" +
                          std::to_string(ex.keys.turn_index) + " " +
                          ex.keys.service + ":" + ex.keys.element + ": " + what);
  };
  const int n = static_cast<int>(ex.token_ids.size());
  if (n != ex.valid_length || static_cast<int>(ex.segment_ids.size()) != n) {
    fail("length mismatch");
  }
  if (n > max_seq_len) fail("longer than max_seq_len");
  if (n < 3 || ex.token_ids[0] != cls_id) fail("does not start with [CLS]");
  if (std::count(ex.token_ids.begin(), ex.token_ids.end(), sep_id) != 2) {
    fail("expected exactly two [SEP] tokens");
  }
  if (ex.token_ids.back() != sep_id) fail("sequence 2 not closed by [SEP]");
  const int first_sep = static_cast<int>(
      std::find(ex.token_ids.begin(), ex.token_ids.end(), sep_id) -
      ex.token_ids.begin());
  for (int i = 0; i < n; ++i) {
    const int expected = i <= first_sep ? 0 : 1;
    if (ex.segment_ids[i] != expected) fail("bad segment id at " + std::to_string(i));
  }
  if (ex.seq2_begin != first_sep + 1 || ex.seq2_end != n - 1) {
    fail("sequence-2 bounds disagree with [SEP] layout");
  }
  auto active = ActiveTask(ex.loss_mask);
  if (!active || *active != ex.task) fail("loss mask is not one-hot on the task");
  const bool label_ok = std::visit(
      [&](const auto& label) {
        using L = std::decay_t<decltype(label)>;
        if constexpr (std::is_same_v<L, BinaryLabel>) {
          return ex.task != TaskKind::kStatus && ex.task != TaskKind::kSpan &&
                 (label.value == 0 || label.value == 1);
        } else if constexpr (std::is_same_v<L, SlotStatus>) {
          return ex.task == TaskKind::kStatus;
        } else {
          if (ex.task != TaskKind::kSpan) return false;
          if (label.IsSentinel()) return true;
          return label.start <= label.end && label.start >= ex.seq2_begin &&
                 label.end < ex.seq2_end;
        }
      },
      ex.label);
  if (!label_ok) fail("label payload does not fit the task");
}

}  // namespace schemadst
