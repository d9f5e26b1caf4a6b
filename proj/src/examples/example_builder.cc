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

#include "schemadst/examples/example_builder.h"

#include <algorithm>
#include <tuple>

#include "schemadst/common/error.h"
#include "schemadst/common/random.h"
#include "schemadst/data/normalize.h"

namespace schemadst {

BuildStats& BuildStats::operator+=(const BuildStats& other) {
  dropped_unbuildable += other.dropped_unbuildable;
  truncated_spans += other.truncated_spans;
  truncated_sequences += other.truncated_sequences;
  return *this;
}

SequencePair BuildSequencePair(const std::vector<std::string>& seq1_parts,
                               std::span<const Utterance> seq2,
                               const Tokenizer& tokenizer, int max_len) {
  if (seq1_parts.empty()) throw InputError("sequence 1 has no parts");
  std::string seq1;
  for (std::size_t i = 0; i < seq1_parts.size(); ++i) {
    if (i > 0) seq1 += kSeq1Delimiter;
    seq1 += seq1_parts[i];
  }
  const std::vector<Token> seq1_tokens = tokenizer.Tokenize(seq1);
  const int budget = max_len - 3 - static_cast<int>(seq1_tokens.size());
  if (budget < 0) {
    throw UnbuildableExampleError("sequence 1 '" + seq1 + "' needs " +
                                  std::to_string(seq1_tokens.size() + 3) +
                                  " tokens, budget is " + std::to_string(max_len));
  }

  SequencePair pair;
  auto push = [&pair](int id, int segment, TokenOrigin origin) {
    pair.token_ids.push_back(id);
    pair.segment_ids.push_back(segment);
    pair.origins.push_back(origin);
  };
  push(tokenizer.cls_id(), 0, {});
  for (const auto& token : seq1_tokens) push(token.id, 0, {});
  push(tokenizer.sep_id(), 0, {});
  pair.seq2_begin = static_cast<int>(pair.token_ids.size());

  int used = 0;
  for (const auto& utterance : seq2) {
    for (const auto& token : tokenizer.Tokenize(utterance.text)) {
      if (used == budget) {
        ++pair.dropped_tokens;
        continue;
      }
      push(token.id, 1, {utterance.role, token.start, token.end});
      ++used;
    }
  }
  pair.seq2_end = static_cast<int>(pair.token_ids.size());
  push(tokenizer.sep_id(), 1, {});
  return pair;
}

SpanTarget AlignSpan(int start_char, int end_char, UtteranceRole role,
                     std::span<const TokenOrigin> origins, int seq2_begin,
                     int seq2_end) {
  int first = -1;
  int last = -1;
  for (int i = seq2_begin; i < seq2_end; ++i) {
    const TokenOrigin& o = origins[i];
    if (o.role != role) continue;
    if (o.start_char <= start_char) first = i;
    if (last < 0 && o.end_char >= end_char) last = i;
  }
  if (first < 0 || last < 0 || first > last) return {};
  return {first, last};
}

SlotStatus DeriveSlotStatus(const SlotValueMap& previous, const SlotValueMap& current,
                            const std::string& slot) {
  auto cur = current.find(slot);
  if (cur == current.end() || cur->second.empty()) return SlotStatus::kNone;
  auto prev = previous.find(slot);
  if (prev != previous.end() && prev->second == cur->second) return SlotStatus::kNone;
  return cur->second.front() == kDontcareValue ? SlotStatus::kDontcare
                                               : SlotStatus::kActive;
}

ExampleBuilder::ExampleBuilder(const std::vector<ServiceSchema>& schemas,
                               const Tokenizer& tokenizer, ExampleConfig config)
    : tokenizer_(tokenizer), config_(config) {
  for (const auto& schema : schemas) {
    schemas_.emplace(schema.service_name,
                     NormalizeSchemaNames(schema, config_.normalize_names));
  }
}

const ServiceSchema& ExampleBuilder::schema(const std::string& service) const {
  auto it = schemas_.find(service);
  if (it == schemas_.end()) {
    throw ValidationError("no schema for service '" + service + "'");
  }
  return it->second;
}

namespace {

// Picks the gold span for a slot: prefer spans whose text is one of the
// slot's current gold values, then user-side spans.
const SpanLabel* ChooseSpan(const DialogueTurn& turn, const FrameAnnotation& frame,
                            const std::string& slot) {
  const SpanLabel* best = nullptr;
  int best_rank = -1;
  auto values = frame.state_slot_values.find(slot);
  for (const auto& span : frame.turn_spans) {
    if (span.slot != slot) continue;
    const std::string text = turn.Utterance(span.role).substr(
        span.start_char, span.end_char - span.start_char);
    const bool matches_gold =
        values != frame.state_slot_values.end() &&
        std::find(values->second.begin(), values->second.end(), text) !=
            values->second.end();
    const int rank = (matches_gold ? 2 : 0) + (span.role == UtteranceRole::kUser ? 1 : 0);
    if (rank > best_rank) {
      best = &span;
      best_rank = rank;
    }
  }
  return best;
}

}  // namespace

std::vector<QAExample> ExampleBuilder::BuildTurn(const DialogueTurn& turn,
                                                 const std::string& service,
                                                 const FrameAnnotation* gold,
                                                 const SlotValueMap& previous_gold,
                                                 BuildStats* stats) const {
  const ServiceSchema& sch = schema(service);
  BuildStats local;
  std::vector<QAExample> out;

  std::vector<Utterance> both;
  if (!turn.system_utterance.empty()) {
    both.push_back({UtteranceRole::kSystem, turn.system_utterance});
  }
  both.push_back({UtteranceRole::kUser, turn.user_utterance});
  const std::vector<Utterance> user_only = {{UtteranceRole::kUser, turn.user_utterance}};

  auto emit = [&](TaskKind task, const std::vector<std::string>& seq1,
                  std::span<const Utterance> seq2, std::string element,
                  std::optional<std::string> value, LabelPayload label) -> QAExample* {
    SequencePair pair;
    try {
      pair = BuildSequencePair(seq1, seq2, tokenizer_, config_.max_seq_len);
    } catch (const UnbuildableExampleError&) {
      ++local.dropped_unbuildable;
      return nullptr;
    }
    if (pair.dropped_tokens > 0) ++local.truncated_sequences;
    QAExample ex;
    ex.task = task;
    ex.valid_length = static_cast<int>(pair.token_ids.size());
    ex.token_ids = std::move(pair.token_ids);
    ex.segment_ids = std::move(pair.segment_ids);
    ex.origins = std::move(pair.origins);
    ex.seq2_begin = pair.seq2_begin;
    ex.seq2_end = pair.seq2_end;
    ex.label = label;
    ex.loss_mask[static_cast<int>(task)] = 1;
    ex.keys = {service, std::move(element), std::move(value), turn.dialogue_id,
               turn.turn_index};
    out.push_back(std::move(ex));
    return &out.back();
  };

  static const SlotValueMap kEmpty;
  const SlotValueMap& current = gold ? gold->state_slot_values : kEmpty;

  for (const auto& intent : sch.intents) {
    const int label = gold && gold->active_intent == intent.name ? 1 : 0;
    emit(TaskKind::kIntent, {intent.display_name, intent.description}, both,
         intent.name, std::nullopt, BinaryLabel{label});
  }
  for (const auto& slot : sch.slots) {
    const int label = gold && gold->requested_slots.count(slot.name) ? 1 : 0;
    emit(TaskKind::kRequested, {slot.display_name, slot.description}, user_only,
         slot.name, std::nullopt, BinaryLabel{label});
  }
  for (const auto& slot : sch.slots) {
    const SlotStatus status =
        gold ? DeriveSlotStatus(previous_gold, current, slot.name) : SlotStatus::kNone;
    emit(TaskKind::kStatus, {slot.display_name, slot.description}, both, slot.name,
         std::nullopt, status);
  }
  for (const auto& slot : sch.slots) {
    if (!slot.is_categorical) continue;
    const bool active = gold && DeriveSlotStatus(previous_gold, current, slot.name) ==
                                    SlotStatus::kActive;
    for (std::size_t v = 0; v < slot.possible_values.size(); ++v) {
      const std::string& value = slot.possible_values[v];
      int label = 0;
      if (active) {
        const auto& alternatives = current.at(slot.name);
        label = std::find(alternatives.begin(), alternatives.end(), value) !=
                        alternatives.end()
                    ? 1
                    : 0;
      }
      emit(TaskKind::kCatValue, {slot.display_name, slot.ValueDisplay(v)}, both,
           slot.name, value, BinaryLabel{label});
    }
  }
  for (const auto& slot : sch.slots) {
    if (slot.is_categorical) continue;
    QAExample* ex = emit(TaskKind::kSpan, {slot.display_name, slot.description}, both,
                         slot.name, std::nullopt, SpanTarget{});
    if (!ex || !gold) continue;
    if (const SpanLabel* span = ChooseSpan(turn, *gold, slot.name)) {
      const SpanTarget target = AlignSpan(span->start_char, span->end_char, span->role,
                                          ex->origins, ex->seq2_begin, ex->seq2_end);
      if (target.IsSentinel()) ++local.truncated_spans;
      ex->label = target;
    }
  }
  if (stats) *stats += local;
  return out;
}

std::vector<QAExample> ExampleBuilder::BuildDialogue(const Dialogue& dialogue,
                                                     BuildStats* stats) const {
  std::vector<QAExample> out;
  std::map<std::string, SlotValueMap> previous;
  for (const auto& turn : dialogue.turns) {
    for (const auto& frame : turn.frames) {
      auto examples =
          BuildTurn(turn, frame.service, &frame, previous[frame.service], stats);
      std::move(examples.begin(), examples.end(), std::back_inserter(out));
    }
    for (const auto& frame : turn.frames) {
      previous[frame.service] = frame.state_slot_values;
    }
  }
  return out;
}

std::vector<QAExample> ExampleBuilder::BuildCorpus(const std::vector<Dialogue>& dialogues,
                                                   BuildStats* stats) const {
  std::vector<QAExample> out;
  for (const auto& dialogue : dialogues) {
    auto examples = BuildDialogue(dialogue, stats);
    std::move(examples.begin(), examples.end(), std::back_inserter(out));
  }
  return out;
}

std::vector<QAExample> BuildExamples(const DialogueTurn& turn, const ServiceSchema& schema,
                                     const Tokenizer& tokenizer, const ExampleConfig& config,
                                     const SlotValueMap& previous_gold, BuildStats* stats) {
  ExampleBuilder builder({schema}, tokenizer, config);
  return builder.BuildTurn(turn, schema.service_name,
                           turn.FindFrame(schema.service_name), previous_gold, stats);
}

std::vector<QAExample> BalanceStatusExamples(std::vector<QAExample> examples,
                                             std::uint64_t seed) {
  using Key = std::pair<std::string, std::string>;
  std::map<Key, std::vector<std::size_t>> negatives;
  std::map<Key, std::size_t> positives;
  for (std::size_t i = 0; i < examples.size(); ++i) {
    const QAExample& ex = examples[i];
    if (ex.task != TaskKind::kStatus) continue;
    Key key{ex.keys.service, ex.keys.element};
    if (std::get<SlotStatus>(ex.label) == SlotStatus::kNone) {
      negatives[key].push_back(i);
    } else {
      ++positives[key];
    }
  }
  std::vector<bool> drop(examples.size(), false);
  Rng rng(seed);
  for (auto& [key, indices] : negatives) {
    const std::size_t keep =
        std::min(indices.size(), std::max<std::size_t>(positives[key], 1));
    // Partial Fisher-Yates: the first `keep` slots become the sample.
    for (std::size_t i = 0; i < keep; ++i) {
      std::swap(indices[i], indices[i + rng.Below(indices.size() - i)]);
    }
    for (std::size_t i = keep; i < indices.size(); ++i) drop[indices[i]] = true;
  }
  std::vector<QAExample> out;
  out.reserve(examples.size());
  for (std::size_t i = 0; i < examples.size(); ++i) {
    if (!drop[i]) out.push_back(std::move(examples[i]));
  }
  return out;
}

}  // namespace schemadst
