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

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "schemadst/common/error.h"
#include "schemadst/common/random.h"
#include "schemadst/examples/example_builder.h"
#include "schemadst/examples/example_io.h"
#include "schemadst/examples/tokenizer.h"
#include "oracles.h"
#include "test_util.h"

namespace schemadst {
namespace {

using testing::TinySchema;
using testing::TinyTurn;
using testing::TinyVocabulary;

std::string Detokenize(const Vocabulary& vocab, const std::vector<int>& ids, int begin,
                       int end) {
  std::string out;
  for (int i = begin; i < end; ++i) {
    if (!out.empty()) out += " ";
    out += vocab.Token(ids[i]);
  }
  return out;
}

TEST(TokenizerTest, SplitsOnSpaceAndPunctuation) {
  const auto words = SplitWords("hi, you  there.");
  const std::vector<std::pair<int, int>> expected = {{0, 2}, {2, 3}, {4, 7}, {9, 14},
                                                     {14, 15}};
  EXPECT_EQ(words, expected);
}

TEST(TokenizerTest, GreedyLongestMatchWithContinuations) {
  Vocabulary vocab({kPadToken, kUnkToken, kClsToken, kSepToken, "un", "##aff", "##able",
                    "##a", "able", "run"});
  WordPieceTokenizer tok(vocab);
  const auto tokens = tok.Tokenize("Unaffable run");
  ASSERT_EQ(tokens.size(), 4u);
  EXPECT_EQ(vocab.Token(tokens[0].id), "un");
  EXPECT_EQ(vocab.Token(tokens[1].id), "##aff");
  EXPECT_EQ(vocab.Token(tokens[2].id), "##able");
  EXPECT_EQ(tokens[2].start, 5);
  EXPECT_EQ(tokens[2].end, 9);
  EXPECT_EQ(vocab.Token(tokens[3].id), "run");
}

TEST(TokenizerTest, UncoverableWordBecomesOneUnk) {
  Vocabulary vocab({kPadToken, kUnkToken, kClsToken, kSepToken, "ab"});
  WordPieceTokenizer tok(vocab);
  const auto tokens = tok.Tokenize("abc");
  ASSERT_EQ(tokens.size(), 1u);
  EXPECT_EQ(tokens[0].id, tok.unk_id());
  EXPECT_EQ(tokens[0].start, 0);
  EXPECT_EQ(tokens[0].end, 3);
}

TEST(TokenizerTest, BuiltVocabularyCoversEveryWordOfItsCorpus) {
  Rng rng(5);
  std::vector<std::string> texts;
  for (int t = 0; t < 50; ++t) {
    std::string s;
    for (int w = 0; w < 6; ++w) {
      for (int c = 0; c < 1 + static_cast<int>(rng.Below(8)); ++c) {
        s.push_back(static_cast<char>('a' + rng.Below(26)));
      }
      s += rng.Bernoulli(0.2) ? " , " : " ";
    }
    texts.push_back(s);
  }
  VocabularyOptions options;
  options.max_words = 20;  // most words must then be assembled from pieces
  WordPieceTokenizer tok(BuildVocabulary(texts, options));
  for (const auto& text : texts) {
    for (const auto& token : tok.Tokenize(text)) {
      EXPECT_NE(token.id, tok.unk_id()) << text;
    }
  }
}

TEST(TokenizerTest, OffsetsReassembleWords) {
  WordPieceTokenizer tok(TinyVocabulary());
  const std::string text = TinyTurn().user_utterance;
  std::string rebuilt;
  int previous_end = -1;
  for (const auto& token : tok.Tokenize(text)) {
    if (previous_end >= 0 && token.start != previous_end) rebuilt += " ";
    rebuilt += text.substr(token.start, token.end - token.start);
    previous_end = token.end;
  }
  EXPECT_EQ(rebuilt, text);
}

TEST(TokenizerTest, VocabularySaveLoadKeepsFingerprint) {
  const Vocabulary vocab = TinyVocabulary();
  const auto path = testing::TempDir("vocab") / "vocab.txt";
  vocab.Save(path);
  const Vocabulary loaded = Vocabulary::Load(path);
  EXPECT_EQ(loaded.tokens(), vocab.tokens());
  EXPECT_EQ(loaded.Fingerprint(), vocab.Fingerprint());
}

class BuilderTest : public ::testing::Test {
 protected:
  BuilderTest() : tokenizer_(TinyVocabulary()) {}

  std::vector<QAExample> Build(const ExampleConfig& config = {}) {
    return BuildExamples(TinyTurn(), TinySchema(), tokenizer_, config);
  }

  WordPieceTokenizer tokenizer_;
};

TEST_F(BuilderTest, EnumeratesFourteenExamples) {
  // 2 intents + 3 requested + 3 status + 4 categorical values + 2 spans.
  const auto examples = Build();
  ASSERT_EQ(examples.size(), 14u);
  std::map<TaskKind, int> counts;
  for (const auto& ex : examples) ++counts[ex.task];
  EXPECT_EQ(counts[TaskKind::kIntent], 2);
  EXPECT_EQ(counts[TaskKind::kRequested], 3);
  EXPECT_EQ(counts[TaskKind::kStatus], 3);
  EXPECT_EQ(counts[TaskKind::kCatValue], 4);
  EXPECT_EQ(counts[TaskKind::kSpan], 2);
  for (const auto& ex : examples) {
    EXPECT_NO_THROW(CheckExampleInvariants(ex, tokenizer_.cls_id(), tokenizer_.sep_id(),
                                           128));
  }
}

TEST_F(BuilderTest, LabelsFollowGold) {
  const auto examples = Build();
  for (const auto& ex : examples) {
    const std::string& element = ex.keys.element;
    switch (ex.task) {
      case TaskKind::kIntent:
        EXPECT_EQ(std::get<BinaryLabel>(ex.label).value, element == "FindRestaurants");
        break;
      case TaskKind::kRequested:
        EXPECT_EQ(std::get<BinaryLabel>(ex.label).value, element == "price_range");
        break;
      case TaskKind::kStatus:
        // No previous state, so every slot with a value is active.
        EXPECT_EQ(std::get<SlotStatus>(ex.label), SlotStatus::kActive);
        break;
      case TaskKind::kCatValue:
        EXPECT_EQ(std::get<BinaryLabel>(ex.label).value, *ex.keys.value == "cheap");
        break;
      case TaskKind::kSpan: {
        const auto target = std::get<SpanTarget>(ex.label);
        ASSERT_FALSE(target.IsSentinel());
        const std::string text =
            Detokenize(tokenizer_.vocabulary(), ex.token_ids, target.start, target.end + 1);
        EXPECT_EQ(text, element == "city" ? "san jose" : "river cafe");
        break;
      }
    }
  }
}

TEST_F(BuilderTest, RequestedUsesUserUtteranceOnly) {
  const DialogueTurn turn = TinyTurn();
  for (const auto& ex : Build()) {
    bool has_system = false;
    for (int i = ex.seq2_begin; i < ex.seq2_end; ++i) {
      has_system |= ex.origins[i].role == UtteranceRole::kSystem;
    }
    EXPECT_EQ(has_system, ex.task != TaskKind::kRequested) << TaskName(ex.task);
  }
}

TEST_F(BuilderTest, LayoutIsClsSeq1SepSeq2Sep) {
  for (const auto& ex : Build()) {
    EXPECT_EQ(ex.token_ids.front(), tokenizer_.cls_id());
    EXPECT_EQ(ex.token_ids[ex.seq2_begin - 1], tokenizer_.sep_id());
    EXPECT_EQ(ex.token_ids.back(), tokenizer_.sep_id());
    EXPECT_EQ(ex.seq2_end, ex.valid_length - 1);
    for (int i = 0; i < ex.valid_length; ++i) {
      EXPECT_EQ(ex.segment_ids[i], i >= ex.seq2_begin ? 1 : 0);
    }
  }
}

TEST_F(BuilderTest, TruncatedSpanBecomesSentinel) {
  ExampleConfig config;
  // Long enough for every sequence 1, too short for the user's city span.
  config.max_seq_len = 24;
  BuildStats stats;
  const auto examples =
      BuildExamples(TinyTurn(), TinySchema(), tokenizer_, config, {}, &stats);
  bool saw_city = false;
  for (const auto& ex : examples) {
    EXPECT_LE(ex.valid_length, 24);
    if (ex.task == TaskKind::kSpan && ex.keys.element == "city") {
      saw_city = true;
      EXPECT_TRUE(std::get<SpanTarget>(ex.label).IsSentinel());
    }
  }
  EXPECT_TRUE(saw_city);
  EXPECT_GE(stats.truncated_spans, 1);
  EXPECT_GT(stats.truncated_sequences, 0);
}

TEST_F(BuilderTest, OverlongSequenceOneIsDroppedAndCounted) {
  ExampleConfig config;
  config.max_seq_len = 8;
  BuildStats stats;
  const auto examples =
      BuildExamples(TinyTurn(), TinySchema(), tokenizer_, config, {}, &stats);
  EXPECT_EQ(examples.size() + stats.dropped_unbuildable, 14u);
  EXPECT_GT(stats.dropped_unbuildable, 0);
}

TEST_F(BuilderTest, NoGoldGivesAllNegative) {
  ExampleBuilder builder({TinySchema()}, tokenizer_, {});
  for (const auto& ex : builder.BuildTurn(TinyTurn(), "Restaurants_1", nullptr, {},
                                          nullptr)) {
    EXPECT_TRUE(IsNegative(ex)) << TaskName(ex.task);
  }
}

TEST(StatusTest, DerivedFromStateDelta) {
  const SlotValueMap prev = {{"city", {"san jose"}}};
  EXPECT_EQ(DeriveSlotStatus(prev, prev, "city"), SlotStatus::kNone);
  EXPECT_EQ(DeriveSlotStatus(prev, {{"city", {"dontcare"}}}, "city"), SlotStatus::kDontcare);
  EXPECT_EQ(DeriveSlotStatus(prev, {{"city", {"paris"}}}, "city"), SlotStatus::kActive);
  EXPECT_EQ(DeriveSlotStatus(prev, {}, "city"), SlotStatus::kNone);
  EXPECT_EQ(DeriveSlotStatus({}, prev, "city"), SlotStatus::kActive);
}

// Brute force: every window [s, e] of same-role tokens covering the span,
// minimal by length.
SpanTarget BruteForceAlign(int start, int end, UtteranceRole role,
                           const std::vector<TokenOrigin>& origins, int lo, int hi) {
  SpanTarget best;
  int best_len = 1 << 30;
  for (int s = lo; s < hi; ++s) {
    for (int e = s; e < hi; ++e) {
      bool same_role = true;
      for (int i = s; i <= e; ++i) same_role &= origins[i].role == role;
      if (!same_role) continue;
      if (origins[s].start_char <= start && origins[e].end_char >= end &&
          e - s < best_len) {
        best = {s, e};
        best_len = e - s;
      }
    }
  }
  return best;
}

TEST(AlignSpanTest, MatchesBruteForceWindow) {
  Rng rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    // Two utterances of random-width contiguous tokens.
    std::vector<TokenOrigin> origins(2);  // [CLS] and one seq1 token
    const int lo = 2;
    std::map<UtteranceRole, int> lengths;
    for (UtteranceRole role : {UtteranceRole::kSystem, UtteranceRole::kUser}) {
      int pos = 0;
      const int n = 1 + static_cast<int>(rng.Below(6));
      for (int i = 0; i < n; ++i) {
        pos += static_cast<int>(rng.Below(2));  // optional space
        const int width = 1 + static_cast<int>(rng.Below(4));
        origins.push_back({role, pos, pos + width});
        pos += width;
      }
      lengths[role] = pos;
    }
    const int hi = static_cast<int>(origins.size());
    const UtteranceRole role =
        rng.Bernoulli(0.5) ? UtteranceRole::kSystem : UtteranceRole::kUser;
    const int a = static_cast<int>(rng.Below(lengths[role]));
    const int b = a + 1 + static_cast<int>(rng.Below(lengths[role] - a));
    EXPECT_EQ(AlignSpan(a, b, role, origins, lo, hi),
              BruteForceAlign(a, b, role, origins, lo, hi))
        << "trial " << trial;
  }
}

TEST(BalancerTest, PropertiesHoldOnRandomSets) {
  Rng rng(99);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto input = testing::RandomTaskMix(rng);
    const std::uint64_t seed = rng.Next();
    EXPECT_EQ(testing::CheckBalancerContract(input, BalanceStatusExamples(input, seed),
                                             BalanceStatusExamples(input, seed)),
              "")
        << "trial " << trial;
  }
}

TEST(ExampleIoTest, JsonlRoundTrip) {
  WordPieceTokenizer tokenizer(TinyVocabulary());
  const auto examples = BuildExamples(TinyTurn(), TinySchema(), tokenizer, {});
  std::ostringstream out;
  WriteExamplesJsonl(examples, out);
  std::istringstream in(out.str());
  std::string line;
  std::size_t i = 0;
  while (std::getline(in, line)) {
    ASSERT_LT(i, examples.size());
    const QAExample back = ExampleFromJsonLine(line);
    EXPECT_EQ(back.task, examples[i].task);
    EXPECT_EQ(back.token_ids, examples[i].token_ids);
    EXPECT_EQ(back.segment_ids, examples[i].segment_ids);
    EXPECT_EQ(back.valid_length, examples[i].valid_length);
    EXPECT_EQ(back.label, examples[i].label);
    EXPECT_EQ(back.loss_mask, examples[i].loss_mask);
    EXPECT_EQ(back.keys, examples[i].keys);
    EXPECT_EQ(ExampleToJsonLine(back), line);
    ++i;
  }
  EXPECT_EQ(i, examples.size());
}

TEST(ExampleIoTest, MalformedLineIsParseError) {
  EXPECT_THROW(ExampleFromJsonLine("{\"task\": "), ParseError);
  EXPECT_THROW(ExampleFromJsonLine("{\"task\": \"BOGUS\"}"), ParseError);
}

TEST(ExampleIoTest, StatisticsCountTasksAndNegatives) {
  WordPieceTokenizer tokenizer(TinyVocabulary());
  const auto stats = ComputeStatistics(BuildExamples(TinyTurn(), TinySchema(), tokenizer, {}));
  EXPECT_EQ(stats.total(), 14);
  EXPECT_EQ(stats.counts[static_cast<int>(TaskKind::kCatValue)], 4);
  EXPECT_EQ(stats.negatives[static_cast<int>(TaskKind::kCatValue)], 3);
  EXPECT_EQ(stats.negatives[static_cast<int>(TaskKind::kStatus)], 0);
  EXPECT_DOUBLE_EQ(stats.NegativePercentages()[static_cast<int>(TaskKind::kIntent)], 50.0);
}

}  // namespace
}  // namespace schemadst
