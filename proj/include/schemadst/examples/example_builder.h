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

#ifndef SCHEMADST_EXAMPLES_EXAMPLE_BUILDER_H_
#define SCHEMADST_EXAMPLES_EXAMPLE_BUILDER_H_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "schemadst/data/dialogue.h"
#include "schemadst/data/schema.h"
#include "schemadst/examples/qa_example.h"
#include "schemadst/examples/tokenizer.h"

namespace schemadst {

inline constexpr char kSeq1Delimiter[] = " : ";

struct ExampleConfig {
  int max_seq_len = 128;
  bool normalize_names = false;
  bool balance = true;
  std::uint64_t seed = 0;
};

struct BuildStats {
  int dropped_unbuildable = 0;
  int truncated_spans = 0;
  int truncated_sequences = 0;

  BuildStats& operator+=(const BuildStats& other);
};

struct Utterance {
  UtteranceRole role;
  std::string_view text;
};

struct SequencePair {
  std::vector<int> token_ids;
  std::vector<int> segment_ids;
  std::vector<TokenOrigin> origins;
  int seq2_begin = 0;
  int seq2_end = 0;
  int dropped_tokens = 0;  // sequence-2 tokens lost to truncation
};

// [CLS] seq1 [SEP] seq2 [SEP]. seq1_parts are joined with " : ", sequence-2
// utterances with a single space (empty ones are skipped). Sequence 2 is
// truncated from the right; sequence 1 never is, and an example whose
// sequence 1 does not fit throws UnbuildableExampleError.
SequencePair BuildSequencePair(const std::vector<std::string>& seq1_parts,
                               std::span<const Utterance> seq2,
                               const Tokenizer& tokenizer, int max_len);

// Smallest window of sequence-2 tokens of `role` whose character coverage
// contains [start_char, end_char). Returns the (0, 0) sentinel when the span
// is not coverable (e.g. it falls into the truncated tail).
SpanTarget AlignSpan(int start_char, int end_char, UtteranceRole role,
                     std::span<const TokenOrigin> origins, int seq2_begin,
                     int seq2_end);

// Per-turn status of one slot from the gold state delta.
SlotStatus DeriveSlotStatus(const SlotValueMap& previous, const SlotValueMap& current,
                            const std::string& slot);

// Turns dialogue turns into QA examples. Schemas are normalized once at
// construction when config.normalize_names is set.
class ExampleBuilder {
 public:
  ExampleBuilder(const std::vector<ServiceSchema>& schemas, const Tokenizer& tokenizer,
                 ExampleConfig config);

  // All examples of one (turn, service). With `gold` null every label is
  // negative, which is what inference needs. `previous_gold` is the service's
  // gold state after the previous turn (empty on first mention).
  std::vector<QAExample> BuildTurn(const DialogueTurn& turn, const std::string& service,
                                   const FrameAnnotation* gold,
                                   const SlotValueMap& previous_gold,
                                   BuildStats* stats) const;

  // Labeled examples of every frame of every turn.
  std::vector<QAExample> BuildDialogue(const Dialogue& dialogue, BuildStats* stats) const;
  std::vector<QAExample> BuildCorpus(const std::vector<Dialogue>& dialogues,
                                     BuildStats* stats) const;

  const ServiceSchema& schema(const std::string& service) const;
  const Tokenizer& tokenizer() const { return tokenizer_; }
  const ExampleConfig& config() const { return config_; }

 private:
  const Tokenizer& tokenizer_;
  ExampleConfig config_;
  std::map<std::string, ServiceSchema> schemas_;
};

// Single-turn convenience wrapper.
std::vector<QAExample> BuildExamples(const DialogueTurn& turn, const ServiceSchema& schema,
                                     const Tokenizer& tokenizer, const ExampleConfig& config,
                                     const SlotValueMap& previous_gold = {},
                                     BuildStats* stats = nullptr);

// Caps STATUS negatives per (service, slot) at max(#positives, 1), sampling
// the kept negatives uniformly without replacement. Everything else passes
// through; relative order is preserved.
std::vector<QAExample> BalanceStatusExamples(std::vector<QAExample> examples,
                                             std::uint64_t seed);

}  // namespace schemadst

#endif  // SCHEMADST_EXAMPLES_EXAMPLE_BUILDER_H_
