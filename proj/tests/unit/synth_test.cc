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

#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "schemadst/common/error.h"
#include "schemadst/data/sgd_io.h"
#include "schemadst/examples/example_builder.h"
#include "schemadst/examples/example_io.h"
#include "schemadst/synth/synth.h"
#include "test_util.h"

namespace schemadst {
namespace {

std::string ReadAll(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

TEST(SynthTest, SameSeedGivesByteIdenticalCorpora) {
  SynthConfig config;
  config.n_dialogues = 40;
  const auto a = testing::TempDir("synth_a");
  const auto b = testing::TempDir("synth_b");
  WriteCorpus(GenerateCorpus(config), a);
  WriteCorpus(GenerateCorpus(config), b);
  for (const char* file : {"train/schema.json", "train/dialogues_001.json", "dev/schema.json",
                           "dev/dialogues_001.json", "vocab.txt"}) {
    const std::string content = ReadAll(a / file);
    EXPECT_FALSE(content.empty()) << file;
    EXPECT_EQ(content, ReadAll(b / file)) << file;
  }
  config.seed = 8;
  const auto c = testing::TempDir("synth_c");
  WriteCorpus(GenerateCorpus(config), c);
  EXPECT_NE(ReadAll(a / "train/dialogues_001.json"), ReadAll(c / "train/dialogues_001.json"));
}

TEST(SynthTest, SeenUnseenSplit) {
  const SynthCorpus corpus = GenerateCorpus({});
  EXPECT_EQ(corpus.eval_schemas.size(), 12u);
  EXPECT_EQ(corpus.train_schemas.size(), 9u);
  EXPECT_EQ(corpus.registry.seen_services.size(), 9u);
  std::set<std::string> train_names;
  for (const auto& s : corpus.train_schemas) train_names.insert(s.service_name);
  for (const auto& d : corpus.train_dialogues) {
    for (const auto& service : d.services) EXPECT_TRUE(train_names.count(service));
  }
  int unseen_frames = 0;
  for (const auto& d : corpus.eval_dialogues) {
    for (const auto& t : d.turns) {
      for (const auto& f : t.frames) unseen_frames += !corpus.registry.IsSeen(f.service);
    }
  }
  EXPECT_GT(unseen_frames, 0);
  EXPECT_EQ(corpus.train_dialogues.size() + corpus.eval_dialogues.size(), 300u);
}

TEST(SynthTest, PassesValidationAndSpansSliceToGoldValues) {
  const SynthCorpus corpus = GenerateCorpus({});
  for (const auto& s : corpus.eval_schemas) EXPECT_NO_THROW(ValidateSchema(s));
  const SchemaIndex index = IndexSchemas(corpus.eval_schemas);
  long spans = 0;
  for (const auto* split : {&corpus.train_dialogues, &corpus.eval_dialogues}) {
    for (const auto& d : *split) {
      EXPECT_NO_THROW(ValidateDialogue(d, index));
      std::map<std::string, SlotValueMap> previous;
      for (const auto& t : d.turns) {
        for (const auto& f : t.frames) {
          const ServiceSchema& schema = *index.at(f.service);
          for (const auto& span : f.turn_spans) {
            ++spans;
            const std::string text = t.Utterance(span.role).substr(
                span.start_char, span.end_char - span.start_char);
            EXPECT_EQ(text, f.state_slot_values.at(span.slot).front()) << d.dialogue_id;
          }
          // Every changed non-categorical value has a span this turn.
          for (const auto& [slot, values] : f.state_slot_values) {
            if (schema.FindSlot(slot)->is_categorical || values.front() == kDontcareValue) {
              continue;
            }
            if (DeriveSlotStatus(previous[f.service], f.state_slot_values, slot) !=
                SlotStatus::kActive) {
              continue;
            }
            bool found = false;
            for (const auto& span : f.turn_spans) found |= span.slot == slot;
            EXPECT_TRUE(found) << d.dialogue_id << " " << slot;
          }
          for (const auto& [slot, values] : previous[f.service]) {
            EXPECT_TRUE(f.state_slot_values.count(slot)) << "state shrank";
          }
          previous[f.service] = f.state_slot_values;
        }
      }
    }
  }
  EXPECT_GT(spans, 100);
}

TEST(SynthTest, StatusNegativeRatioNearTarget) {
  const SynthCorpus corpus = GenerateCorpus({});
  WordPieceTokenizer tokenizer(corpus.vocabulary);
  ExampleConfig config;
  config.max_seq_len = 256;
  ExampleBuilder builder(corpus.train_schemas, tokenizer, config);
  const auto stats = ComputeStatistics(builder.BuildCorpus(corpus.train_dialogues, nullptr));
  const double status = stats.NegativePercentages()[static_cast<int>(TaskKind::kStatus)];
  EXPECT_NEAR(status, 89.0, 3.0);
}

TEST(SynthTest, VocabularyCoversCorpusWithoutUnk) {
  SynthConfig config;
  config.n_dialogues = 50;
  const SynthCorpus corpus = GenerateCorpus(config);
  WordPieceTokenizer tokenizer(corpus.vocabulary);
  for (const auto& d : corpus.train_dialogues) {
    for (const auto& t : d.turns) {
      for (const auto* text : {&t.system_utterance, &t.user_utterance}) {
        for (const auto& token : tokenizer.Tokenize(*text)) {
          ASSERT_NE(token.id, tokenizer.unk_id()) << *text;
        }
      }
    }
  }
}

TEST(SynthTest, InfeasibleConfigsAreConfigErrors) {
  SynthConfig c;
  c.slots_per_service = 0;
  EXPECT_THROW(c.Validate(), ConfigError);
  c = {};
  c.status_negative_ratio = 1.2;
  EXPECT_THROW(c.Validate(), ConfigError);
  c = {};
  c.n_services = 0;
  EXPECT_THROW(GenerateCorpus(c), ConfigError);
  c = {};
  c.min_turns = 5;
  c.max_turns = 3;
  EXPECT_THROW(c.Validate(), ConfigError);
  EXPECT_THROW(SynthConfig::FromJson({{"n_servicez", 3}}), ConfigError);
  const SynthConfig back = SynthConfig::FromJson(SynthConfig{}.ToJson());
  EXPECT_EQ(back.ToJson(), SynthConfig{}.ToJson());
}

}  // namespace
}  // namespace schemadst
