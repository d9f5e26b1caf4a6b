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

#include "schemadst/examples/example_io.h"

#include <cmath>
#include <fstream>
#include <limits>

#include "schemadst/common/error.h"

namespace schemadst {
using ojson = nlohmann::ordered_json;

std::string ExampleToJsonLine(const QAExample& ex) {
  ojson line;
  line["task"] = TaskName(ex.task);
  line["token_ids"] = ex.token_ids;
  line["segment_ids"] = ex.segment_ids;
  std::visit(
      [&line](const auto& label) {
        using L = std::decay_t<decltype(label)>;
        if constexpr (std::is_same_v<L, BinaryLabel>) {
          line["label"] = label.value;
        } else if constexpr (std::is_same_v<L, SlotStatus>) {
          line["label"] = StatusName(label);
        } else {
          line["label"] = {label.start, label.end};
        }
      },
      ex.label);
  line["loss_mask"] = ex.loss_mask;
  ojson keys;
  keys["service"] = ex.keys.service;
  keys["element"] = ex.keys.element;
  if (ex.keys.value) keys["value"] = *ex.keys.value;
  keys["dialogue_id"] = ex.keys.dialogue_id;
  keys["turn_index"] = ex.keys.turn_index;
  line["keys"] = std::move(keys);
  return line.dump();
}

QAExample ExampleFromJsonLine(const std::string& text) {
  ojson line;
  try {
    line = ojson::parse(text);
  } catch (const ojson::parse_error& e) {
    throw ParseError("example line: byte " + std::to_string(e.byte) + ": " + e.what());
  }
  try {
    QAExample ex;
    ex.task = ParseTask(line.at("task").get<std::string>());
    ex.token_ids = line.at("token_ids").get<std::vector<int>>();
    ex.segment_ids = line.at("segment_ids").get<std::vector<int>>();
    ex.valid_length = static_cast<int>(ex.token_ids.size());
    ex.loss_mask = line.at("loss_mask").get<std::array<int, kNumTasks>>();
    const auto& label = line.at("label");
    switch (ex.task) {
      case TaskKind::kStatus:
        ex.label = ParseStatus(label.get<std::string>());
        break;
      case TaskKind::kSpan:
        ex.label = SpanTarget{label.at(0).get<int>(), label.at(1).get<int>()};
        break;
      default:
        ex.label = BinaryLabel{label.get<int>()};
    }
    const auto& keys = line.at("keys");
    ex.keys.service = keys.at("service").get<std::string>();
    ex.keys.element = keys.at("element").get<std::string>();
    if (keys.contains("value")) ex.keys.value = keys.at("value").get<std::string>();
    ex.keys.dialogue_id = keys.at("dialogue_id").get<std::string>();
    ex.keys.turn_index = keys.at("turn_index").get<int>();
    // Sequence 2 starts after the first segment-0 run and ends before the
    // closing [SEP].
    int begin = 0;
    while (begin < ex.valid_length && ex.segment_ids[begin] == 0) ++begin;
    ex.seq2_begin = begin;
    ex.seq2_end = std::max(begin, ex.valid_length - 1);
    return ex;
  } catch (const ojson::exception& e) {
    throw ParseError(std::string("example line: ") + e.what());
  }
}

void WriteExamplesJsonl(const std::vector<QAExample>& examples, std::ostream& out) {
  for (const auto& ex : examples) out << ExampleToJsonLine(ex) << "\n";
}

void WriteExamplesJsonl(const std::vector<QAExample>& examples,
                        const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  WriteExamplesJsonl(examples, out);
}

std::vector<QAExample> ReadExamplesJsonl(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::vector<QAExample> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) out.push_back(ExampleFromJsonLine(line));
  }
  return out;
}

bool IsNegative(const QAExample& ex) {
  return std::visit(
      [](const auto& label) {
        using L = std::decay_t<decltype(label)>;
        if constexpr (std::is_same_v<L, BinaryLabel>) {
          return label.value == 0;
        } else if constexpr (std::is_same_v<L, SlotStatus>) {
          return label == SlotStatus::kNone;
        } else {
          return label.IsSentinel();
        }
      },
      ex.label);
}

long ExampleStatistics::total() const {
  long sum = 0;
  for (long c : counts) sum += c;
  return sum;
}

std::array<double, kNumTasks> ExampleStatistics::TaskPercentages() const {
  std::array<double, kNumTasks> out{};
  const long n = total();
  for (int t = 0; t < kNumTasks; ++t) {
    out[t] = n == 0 ? std::numeric_limits<double>::quiet_NaN() : 100.0 * counts[t] / n;
  }
  return out;
}

std::array<double, kNumTasks> ExampleStatistics::NegativePercentages() const {
  std::array<double, kNumTasks> out{};
  for (int t = 0; t < kNumTasks; ++t) {
    out[t] = counts[t] == 0 ? std::numeric_limits<double>::quiet_NaN()
                            : 100.0 * negatives[t] / counts[t];
  }
  return out;
}

ojson ExampleStatistics::ToJson() const {
  ojson out;
  out["total"] = total();
  const auto share = TaskPercentages();
  const auto neg = NegativePercentages();
  for (int t = 0; t < kNumTasks; ++t) {
    const char* name = TaskName(static_cast<TaskKind>(t));
    out["count"][name] = counts[t];
    out["task_percent"][name] = std::isnan(share[t]) ? ojson(nullptr) : ojson(share[t]);
    out["negative_percent"][name] = std::isnan(neg[t]) ? ojson(nullptr) : ojson(neg[t]);
  }
  return out;
}

ExampleStatistics ComputeStatistics(const std::vector<QAExample>& examples) {
  ExampleStatistics stats;
  for (const auto& ex : examples) {
    const int t = static_cast<int>(ex.task);
    ++stats.counts[t];
    if (IsNegative(ex)) ++stats.negatives[t];
  }
  return stats;
}

}  // namespace schemadst
