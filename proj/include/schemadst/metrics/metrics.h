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

#ifndef SCHEMADST_METRICS_METRICS_H_
#define SCHEMADST_METRICS_METRICS_H_

#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "schemadst/data/dialogue.h"
#include "schemadst/data/registry.h"
#include "schemadst/data/schema.h"
#include "schemadst/data/sgd_io.h"
#include "schemadst/tracker/state_tracker.h"

namespace schemadst {

enum class MatchMode { kStrict, kFuzzy };

const char* MatchModeName(MatchMode mode);

// Lowercases and collapses whitespace runs to single spaces, trimming ends.
std::string NormalizeValueText(const std::string& text);

// Token-overlap F1 between two normalized strings (1 when both are empty).
double TokenF1(const std::string& a, const std::string& b);

inline constexpr double kFuzzyMatchThreshold = 0.9;

// Categorical slots compare case-sensitively against any alternative;
// non-categorical slots compare normalized text, exactly (strict) or by
// token F1 >= kFuzzyMatchThreshold (fuzzy).
bool ValueMatch(const std::string& predicted, const std::vector<std::string>& gold,
                const SlotDef& slot, MatchMode mode);

// One scored frame: the gold annotation of (dialogue, turn, service) and the
// tracker's state for it.
struct FramePair {
  std::string dialogue_id;
  int turn_index = 0;
  std::string service;
  ServiceState predicted;
  FrameAnnotation gold;
};

// Pairs every gold frame with its prediction. A gold frame without a
// prediction throws AlignmentError; predicted frames without gold are
// ignored.
std::vector<FramePair> AlignFrames(const std::vector<Dialogue>& gold,
                                   const std::vector<PredictedFrame>& predicted);

// A metric over all frames and the seen/unseen buckets. Values are NaN when
// the denominator is zero.
struct BucketedMetric {
  double all = 0.0;
  double seen = 0.0;
  double unseen = 0.0;
  long count_all = 0;
  long count_seen = 0;
  long count_unseen = 0;

  nlohmann::json ToJson() const;
};

BucketedMetric JointGoalAccuracy(std::span<const FramePair> frames,
                                 const SchemaIndex& schemas,
                                 const ServiceRegistry& registry, MatchMode mode);
BucketedMetric AverageGoalAccuracy(std::span<const FramePair> frames,
                                   const SchemaIndex& schemas,
                                   const ServiceRegistry& registry, MatchMode mode);
BucketedMetric RequestedSlotF1(std::span<const FramePair> frames,
                               const ServiceRegistry& registry);
BucketedMetric IntentAccuracy(std::span<const FramePair> frames,
                              const ServiceRegistry& registry);

// F1 of two sets, 1 when both are empty.
double SetF1(const std::set<std::string>& gold, const std::set<std::string>& predicted);

struct MetricsReport {
  MatchMode mode = MatchMode::kStrict;
  BucketedMetric intent_accuracy;
  BucketedMetric requested_slot_f1;
  BucketedMetric average_ga;
  BucketedMetric joint_ga;

  nlohmann::json ToJson() const;
};

MetricsReport ComputeMetrics(std::span<const FramePair> frames, const SchemaIndex& schemas,
                             const ServiceRegistry& registry, MatchMode mode);

// "all(seen/unseen)" percentages, one row per metric and one column per mode.
std::string FormatMetricsTable(const std::vector<MetricsReport>& reports);

}  // namespace schemadst

#endif  // SCHEMADST_METRICS_METRICS_H_
