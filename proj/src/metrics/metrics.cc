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

#include "schemadst/metrics/metrics.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>
#include <tuple>

#include "schemadst/common/error.h"

namespace schemadst {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Running sums per bucket; summation runs in frame order.
struct Accumulator {
  double sum_seen = 0.0, sum_unseen = 0.0, sum_all = 0.0;
  long n_seen = 0, n_unseen = 0;

  void Add(bool seen, double value) {
    sum_all += value;
    if (seen) {
      sum_seen += value;
      ++n_seen;
    } else {
      sum_unseen += value;
      ++n_unseen;
    }
  }

  BucketedMetric Finish() const {
    BucketedMetric m;
    m.count_seen = n_seen;
    m.count_unseen = n_unseen;
    m.count_all = n_seen + n_unseen;
    m.all = m.count_all ? sum_all / m.count_all : kNaN;
    m.seen = n_seen ? sum_seen / n_seen : kNaN;
    m.unseen = n_unseen ? sum_unseen / n_unseen : kNaN;
    return m;
  }
};

const SlotDef& LookupSlot(const SchemaIndex& schemas, const std::string& service,
                          const std::string& slot) {
  auto it = schemas.find(service);
  if (it == schemas.end()) throw ConsistencyError("no schema for service " + service);
  const SlotDef* def = it->second->FindSlot(slot);
  if (!def) throw ConsistencyError("no slot " + service + "." + slot);
  return *def;
}

std::vector<std::string> Words(const std::string& normalized) {
  std::vector<std::string> words;
  std::istringstream in(normalized);
  for (std::string w; in >> w;) words.push_back(w);
  return words;
}

nlohmann::json NumberOrNull(double v) {
  return std::isnan(v) ? nlohmann::json(nullptr) : nlohmann::json(v);
}

std::string Percent(double v) {
  if (std::isnan(v)) return "n/a";
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%.1f", 100.0 * v);
  return buf;
}

}  // namespace

const char* MatchModeName(MatchMode mode) {
  return mode == MatchMode::kStrict ? "strict" : "fuzzy";
}

std::string NormalizeValueText(const std::string& text) {
  std::string out;
  bool pending_space = false;
  for (unsigned char c : text) {
    if (std::isspace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(static_cast<char>(std::tolower(c)));
  }
  return out;
}

double TokenF1(const std::string& a, const std::string& b) {
  const auto wa = Words(a);
  const auto wb = Words(b);
  if (wa.empty() && wb.empty()) return 1.0;
  if (wa.empty() || wb.empty()) return 0.0;
  std::map<std::string, int> counts;
  for (const auto& w : wa) ++counts[w];
  int common = 0;
  for (const auto& w : wb) {
    auto it = counts.find(w);
    if (it != counts.end() && it->second > 0) {
      --it->second;
      ++common;
    }
  }
  if (common == 0) return 0.0;
  const double precision = static_cast<double>(common) / wb.size();
  const double recall = static_cast<double>(common) / wa.size();
  return 2.0 * precision * recall / (precision + recall);
}

bool ValueMatch(const std::string& predicted, const std::vector<std::string>& gold,
                const SlotDef& slot, MatchMode mode) {
  if (slot.is_categorical) {
    return std::find(gold.begin(), gold.end(), predicted) != gold.end();
  }
  const std::string p = NormalizeValueText(predicted);
  for (const auto& alternative : gold) {
    const std::string g = NormalizeValueText(alternative);
    if (p == g) return true;
    if (mode == MatchMode::kFuzzy && TokenF1(g, p) >= kFuzzyMatchThreshold) return true;
  }
  return false;
}

std::vector<FramePair> AlignFrames(const std::vector<Dialogue>& gold,
                                   const std::vector<PredictedFrame>& predicted) {
  std::map<std::tuple<std::string, int, std::string>, const ServiceState*> index;
  for (const auto& p : predicted) {
    index[{p.dialogue_id, p.turn_index, p.service}] = &p.state;
  }
  std::vector<FramePair> pairs;
  for (const auto& dialogue : gold) {
    for (const auto& turn : dialogue.turns) {
      for (const auto& frame : turn.frames) {
        auto it = index.find({dialogue.dialogue_id, turn.turn_index, frame.service});
        if (it == index.end()) {
          throw AlignmentError("no prediction for dialogue " + dialogue.dialogue_id +
                               " turn " + std::to_string(turn.turn_index) +
                               " service " + frame.service);
        }
        pairs.push_back(
            {dialogue.dialogue_id, turn.turn_index, frame.service, *it->second, frame});
      }
    }
  }
  return pairs;
}

nlohmann::json BucketedMetric::ToJson() const {
  return {{"all", NumberOrNull(all)},
          {"seen", NumberOrNull(seen)},
          {"unseen", NumberOrNull(unseen)},
          {"count", {{"all", count_all}, {"seen", count_seen}, {"unseen", count_unseen}}}};
}

BucketedMetric JointGoalAccuracy(std::span<const FramePair> frames,
                                 const SchemaIndex& schemas,
                                 const ServiceRegistry& registry, MatchMode mode) {
  Accumulator acc;
  for (const auto& f : frames) {
    bool correct = true;
    for (const auto& [slot, values] : f.gold.state_slot_values) {
      auto it = f.predicted.slot_values.find(slot);
      if (it == f.predicted.slot_values.end() ||
          !ValueMatch(it->second, values, LookupSlot(schemas, f.service, slot), mode)) {
        correct = false;
        break;
      }
    }
    if (correct) {
      for (const auto& [slot, value] : f.predicted.slot_values) {
        if (!f.gold.state_slot_values.count(slot)) {
          correct = false;
          break;
        }
      }
    }
    acc.Add(registry.IsSeen(f.service), correct ? 1.0 : 0.0);
  }
  return acc.Finish();
}

BucketedMetric AverageGoalAccuracy(std::span<const FramePair> frames,
                                   const SchemaIndex& schemas,
                                   const ServiceRegistry& registry, MatchMode mode) {
  Accumulator acc;
  for (const auto& f : frames) {
    const bool seen = registry.IsSeen(f.service);
    for (const auto& [slot, values] : f.gold.state_slot_values) {
      auto it = f.predicted.slot_values.find(slot);
      const bool correct =
          it != f.predicted.slot_values.end() &&
          ValueMatch(it->second, values, LookupSlot(schemas, f.service, slot), mode);
      acc.Add(seen, correct ? 1.0 : 0.0);
    }
  }
  return acc.Finish();
}

double SetF1(const std::set<std::string>& gold, const std::set<std::string>& predicted) {
  if (gold.empty() && predicted.empty()) return 1.0;
  int common = 0;
  for (const auto& s : predicted) common += gold.count(s) ? 1 : 0;
  // 2PR/(P+R) reduced to integers, so the value is a single rounding.
  return 2.0 * common / static_cast<double>(gold.size() + predicted.size());
}

BucketedMetric RequestedSlotF1(std::span<const FramePair> frames,
                               const ServiceRegistry& registry) {
  Accumulator acc;
  for (const auto& f : frames) {
    acc.Add(registry.IsSeen(f.service),
            SetF1(f.gold.requested_slots, f.predicted.requested_slots));
  }
  return acc.Finish();
}

BucketedMetric IntentAccuracy(std::span<const FramePair> frames,
                              const ServiceRegistry& registry) {
  Accumulator acc;
  for (const auto& f : frames) {
    acc.Add(registry.IsSeen(f.service),
            f.gold.active_intent == f.predicted.active_intent ? 1.0 : 0.0);
  }
  return acc.Finish();
}

MetricsReport ComputeMetrics(std::span<const FramePair> frames, const SchemaIndex& schemas,
                             const ServiceRegistry& registry, MatchMode mode) {
  MetricsReport r;
  r.mode = mode;
  r.intent_accuracy = IntentAccuracy(frames, registry);
  r.requested_slot_f1 = RequestedSlotF1(frames, registry);
  r.average_ga = AverageGoalAccuracy(frames, schemas, registry, mode);
  r.joint_ga = JointGoalAccuracy(frames, schemas, registry, mode);
  return r;
}

nlohmann::json MetricsReport::ToJson() const {
  return {{"match_mode", MatchModeName(mode)},
          {"intent_accuracy", intent_accuracy.ToJson()},
          {"requested_slot_f1", requested_slot_f1.ToJson()},
          {"average_ga", average_ga.ToJson()},
          {"joint_ga", joint_ga.ToJson()}};
}

std::string FormatMetricsTable(const std::vector<MetricsReport>& reports) {
  auto cell = [](const BucketedMetric& m) {
    return Percent(m.all) + "(" + Percent(m.seen) + "/" + Percent(m.unseen) + ")";
  };
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof(line), "%-20s", "metric");
  out << line;
  for (const auto& r : reports) {
    std::snprintf(line, sizeof(line), "  %-22s", MatchModeName(r.mode));
    out << line;
  }
  out << "\n";
  const std::pair<const char*, BucketedMetric MetricsReport::*> rows[] = {
      {"intent_accuracy", &MetricsReport::intent_accuracy},
      {"requested_slot_f1", &MetricsReport::requested_slot_f1},
      {"average_ga", &MetricsReport::average_ga},
      {"joint_ga", &MetricsReport::joint_ga}};
  for (const auto& [name, member] : rows) {
    std::snprintf(line, sizeof(line), "%-20s", name);
    out << line;
    for (const auto& r : reports) {
      std::snprintf(line, sizeof(line), "  %-22s", cell(r.*member).c_str());
      out << line;
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace schemadst
