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

#include "oracles.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <utility>

#include "test_util.h"

namespace schemadst::testing {

MetricsFixture::MetricsFixture() {
  ServiceSchema unseen = TinySchema();
  unseen.service_name = "Restaurants_2";
  schemas = {TinySchema(), unseen};
  index = IndexSchemas(schemas);
  registry = MarkSeenServices({schemas[0]}, schemas);
}

std::vector<FramePair> RandomFramePairs(Rng& rng) {
  const std::vector<std::string> slots = {"city", "restaurant_name"};
  const std::vector<std::string> values = {"a", "b", "c"};
  const std::vector<std::string> intents = {"NONE", "FindRestaurants", "ReserveRestaurant"};
  const std::vector<std::string> requestable = {"city", "restaurant_name", "price_range"};
  std::vector<FramePair> frames;
  const int n = static_cast<int>(rng.Below(8));
  for (int i = 0; i < n; ++i) {
    FramePair f;
    f.service = rng.Bernoulli(0.6) ? "Restaurants_1" : "Restaurants_2";
    f.gold.service = f.service;
    f.turn_index = i;
    for (const auto& s : slots) {
      if (rng.Bernoulli(0.6)) {
        std::vector<std::string> alts = {rng.Pick(values)};
        if (rng.Bernoulli(0.3)) alts.push_back(rng.Pick(values));
        f.gold.state_slot_values[s] = alts;
      }
      if (rng.Bernoulli(0.6)) f.predicted.slot_values[s] = rng.Pick(values);
    }
    for (const auto& s : requestable) {
      if (rng.Bernoulli(0.3)) f.gold.requested_slots.insert(s);
      if (rng.Bernoulli(0.3)) f.predicted.requested_slots.insert(s);
    }
    f.gold.active_intent = rng.Pick(intents);
    f.predicted.active_intent = rng.Pick(intents);
    frames.push_back(std::move(f));
  }
  return frames;
}

MetricCounts BruteForceMetrics(const std::vector<FramePair>& frames,
                               const ServiceRegistry& registry, Bucket bucket) {
  MetricCounts r;
  for (const auto& f : frames) {
    const bool seen = registry.seen_services.count(f.service) > 0;
    if ((bucket == Bucket::kSeen && !seen) || (bucket == Bucket::kUnseen && seen)) continue;
    // Joint: every key of either side must be present on both and agree.
    std::set<std::string> keys;
    for (const auto& kv : f.gold.state_slot_values) keys.insert(kv.first);
    for (const auto& kv : f.predicted.slot_values) keys.insert(kv.first);
    bool all_ok = true;
    for (const auto& k : keys) {
      const auto g = f.gold.state_slot_values.find(k);
      const auto p = f.predicted.slot_values.find(k);
      bool ok = g != f.gold.state_slot_values.end() && p != f.predicted.slot_values.end();
      if (ok) {
        ok = false;
        for (const auto& alt : g->second) ok |= alt == p->second;
      }
      all_ok &= ok;
    }
    r.joint_hits += all_ok;
    ++r.joint_n;
    for (const auto& [k, alts] : f.gold.state_slot_values) {
      const auto p = f.predicted.slot_values.find(k);
      bool ok = false;
      if (p != f.predicted.slot_values.end()) {
        for (const auto& alt : alts) ok |= alt == p->second;
      }
      r.average_hits += ok;
      ++r.average_n;
    }
    int common = 0;
    for (const auto& s : f.predicted.requested_slots) common += f.gold.requested_slots.count(s);
    const long denom = f.gold.requested_slots.size() + f.predicted.requested_slots.size();
    r.requested_sum += denom == 0 ? 1.0 : 2.0 * common / static_cast<double>(denom);
    ++r.requested_n;
    r.intent_hits += f.gold.active_intent == f.predicted.active_intent;
    ++r.intent_n;
  }
  return r;
}

double Ratio(double num, long den) {
  return den == 0 ? std::numeric_limits<double>::quiet_NaN() : num / den;
}

namespace {

bool BitEqual(double got, double want) {
  return std::isnan(want) ? std::isnan(got) : got == want;
}

}  // namespace

std::string CompareWithReference(const MetricsReport& report,
                                 const std::vector<FramePair>& frames,
                                 const ServiceRegistry& registry) {
  for (Bucket bucket : {Bucket::kAll, Bucket::kSeen, Bucket::kUnseen}) {
    const MetricCounts r = BruteForceMetrics(frames, registry, bucket);
    auto pick = [bucket](const BucketedMetric& m) {
      return bucket == Bucket::kAll ? m.all : (bucket == Bucket::kSeen ? m.seen : m.unseen);
    };
    const std::pair<const char*, std::pair<double, double>> checks[] = {
        {"joint_ga", {pick(report.joint_ga), Ratio(r.joint_hits, r.joint_n)}},
        {"average_ga", {pick(report.average_ga), Ratio(r.average_hits, r.average_n)}},
        {"requested_slot_f1",
         {pick(report.requested_slot_f1), Ratio(r.requested_sum, r.requested_n)}},
        {"intent_accuracy", {pick(report.intent_accuracy), Ratio(r.intent_hits, r.intent_n)}},
    };
    for (const auto& [name, values] : checks) {
      if (!BitEqual(values.first, values.second)) {
        std::ostringstream s;
        s.precision(17);
        s << name << " bucket " << static_cast<int>(bucket) << ": got " << values.first
          << ", reference " << values.second;
        return s.str();
      }
    }
  }
  return "";
}

std::vector<QAExample> RandomTaskMix(Rng& rng) {
  std::vector<QAExample> examples;
  const int n = static_cast<int>(rng.Below(60));
  for (int i = 0; i < n; ++i) {
    QAExample ex;
    ex.task = kAllTasks[rng.Below(kNumTasks)];
    ex.keys.service = rng.Bernoulli(0.5) ? "A_1" : "B_1";
    ex.keys.element = "slot" + std::to_string(rng.Below(3));
    ex.keys.turn_index = i;
    if (ex.task == TaskKind::kStatus) {
      ex.label = rng.Bernoulli(0.8) ? SlotStatus::kNone
                                    : (rng.Bernoulli(0.5) ? SlotStatus::kActive
                                                          : SlotStatus::kDontcare);
    } else if (ex.task == TaskKind::kSpan) {
      ex.label = SpanTarget{};
    } else {
      ex.label = BinaryLabel{static_cast<int>(rng.Below(2))};
    }
    ex.loss_mask[static_cast<int>(ex.task)] = 1;
    examples.push_back(ex);
  }
  return examples;
}

std::string CheckBalancerContract(const std::vector<QAExample>& input,
                                  const std::vector<QAExample>& output,
                                  const std::vector<QAExample>& again) {
  if (output.size() != again.size()) return "same seed gave different sizes";
  for (std::size_t i = 0; i < output.size(); ++i) {
    if (!(output[i].keys == again[i].keys)) return "same seed gave different examples";
  }
  std::map<std::pair<std::string, std::string>, std::pair<int, int>> groups;
  std::vector<int> kept;
  for (const auto& ex : output) {
    kept.push_back(ex.keys.turn_index);
    if (ex.task != TaskKind::kStatus) continue;
    auto& [pos, neg] = groups[{ex.keys.service, ex.keys.element}];
    (std::get<SlotStatus>(ex.label) == SlotStatus::kNone ? neg : pos) += 1;
  }
  for (const auto& [key, counts] : groups) {
    if (counts.second > std::max(counts.first, 1)) {
      return "group " + key.first + "/" + key.second + " keeps " +
             std::to_string(counts.second) + " negatives for " +
             std::to_string(counts.first) + " positives";
    }
  }
  if (!std::is_sorted(kept.begin(), kept.end())) return "order not preserved";
  for (const auto& ex : input) {
    const bool removable =
        ex.task == TaskKind::kStatus && std::get<SlotStatus>(ex.label) == SlotStatus::kNone;
    if (!removable && !std::binary_search(kept.begin(), kept.end(), ex.keys.turn_index)) {
      return std::string("removed a ") + TaskName(ex.task) + " example that is not a " +
             "STATUS negative";
    }
  }
  return "";
}

}  // namespace schemadst::testing
