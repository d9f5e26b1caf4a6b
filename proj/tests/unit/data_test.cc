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
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "schemadst/common/error.h"
#include "schemadst/common/random.h"
#include "schemadst/data/normalize.h"
#include "schemadst/data/registry.h"
#include "schemadst/data/sgd_io.h"
#include "test_util.h"

namespace schemadst {
namespace {

using testing::TempDir;
using testing::TinySchema;
using testing::TinyTurn;

void WriteText(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

Dialogue TinyDialogue() {
  Dialogue d;
  d.dialogue_id = "1_00000";
  d.services = {"Restaurants_1"};
  DialogueTurn first;
  first.dialogue_id = d.dialogue_id;
  first.turn_index = 0;
  first.user_utterance = "i want to find restaurants";
  FrameAnnotation frame;
  frame.service = "Restaurants_1";
  frame.active_intent = "FindRestaurants";
  first.frames = {frame};
  d.turns = {first, TinyTurn()};
  return d;
}

TEST(SchemaTest, ValidTinySchemaPasses) { EXPECT_NO_THROW(ValidateSchema(TinySchema())); }

TEST(SchemaTest, DuplicateSlotRejected) {
  ServiceSchema s = TinySchema();
  s.slots.push_back(s.slots[1]);
  EXPECT_THROW(ValidateSchema(s), ValidationError);
}

TEST(SchemaTest, CategoricalWithoutValuesRejected) {
  ServiceSchema s = TinySchema();
  s.slots[0].possible_values.clear();
  s.slots[0].value_display.clear();
  EXPECT_THROW(ValidateSchema(s), ValidationError);
}

TEST(SgdIoTest, SchemaRoundTrip) {
  const auto dir = TempDir("schema_round_trip");
  const std::vector<ServiceSchema> schemas = {TinySchema()};
  SaveSchemas(schemas, dir / "schema.json");
  const auto loaded = LoadSchemas(dir / "schema.json");
  ASSERT_EQ(loaded.size(), 1u);
  EXPECT_EQ(loaded[0].service_name, "Restaurants_1");
  ASSERT_EQ(loaded[0].slots.size(), 3u);
  EXPECT_EQ(loaded[0].slots[0].possible_values, schemas[0].slots[0].possible_values);
  EXPECT_TRUE(loaded[0].slots[0].is_categorical);
  EXPECT_EQ(loaded[0].intents[1].description, schemas[0].intents[1].description);
}

TEST(SgdIoTest, DialogueRoundTripPreservesSpansAndRoles) {
  const auto dir = TempDir("dialogue_round_trip");
  const std::vector<ServiceSchema> schemas = {TinySchema()};
  const std::vector<Dialogue> dialogues = {TinyDialogue()};
  SaveSchemas(schemas, dir / "schema.json");
  SaveDialogues(dialogues, dir / "dialogues_001.json");
  const auto loaded = LoadDialogues(dir, schemas);
  ASSERT_EQ(loaded.size(), 1u);
  EXPECT_EQ(loaded[0], dialogues[0]);
}

TEST(SgdIoTest, TurnsJsonlRoundTrip) {
  const auto dir = TempDir("turns_jsonl");
  const std::vector<Dialogue> dialogues = {TinyDialogue()};
  SaveTurnsJsonl(dialogues, dir / "turns.jsonl");
  EXPECT_EQ(LoadTurnsJsonl(dir / "turns.jsonl"), dialogues);
}

TEST(SgdIoTest, CodepointOffsetsConvertToBytes) {
  const auto dir = TempDir("codepoints");
  // "é" is two bytes; the span covers "café" (codepoints 4..8).
  WriteText(dir / "dialogues_001.json", R"([{"dialogue_id": "1_1", "services": ["Restaurants_1"],
    "turns": [{"speaker": "USER", "utterance": "the café",
      "frames": [{"service": "Restaurants_1", "slots": [{"slot": "restaurant_name",
        "start": 4, "exclusive_end": 8}], "state": {"active_intent": "NONE",
        "requested_slots": [], "slot_values": {"restaurant_name": ["café"]}}}]}]}])");
  const auto loaded = LoadDialogues(dir, {TinySchema()});
  const auto& span = loaded[0].turns[0].frames[0].turn_spans.at(0);
  EXPECT_EQ(span.start_char, 4);
  EXPECT_EQ(span.end_char, 9);
  EXPECT_EQ(loaded[0].turns[0].user_utterance.substr(4, 5), "café");
}

struct BadInput {
  const char* name;
  const char* json;
  bool parse_error;  // otherwise ValidationError
};

class LoaderErrorTest : public ::testing::TestWithParam<BadInput> {};

TEST_P(LoaderErrorTest, Throws) {
  const auto dir = TempDir(std::string("loader_") + GetParam().name);
  WriteText(dir / "dialogues_001.json", GetParam().json);
  if (GetParam().parse_error) {
    EXPECT_THROW(LoadDialogues(dir, {TinySchema()}), ParseError);
  } else {
    EXPECT_THROW(LoadDialogues(dir, {TinySchema()}), ValidationError);
  }
}

INSTANTIATE_TEST_SUITE_P(
    Cases, LoaderErrorTest,
    ::testing::Values(
        BadInput{"malformed", "[{\"dialogue_id\": ", true},
        BadInput{"not_array", "{}", true},
        BadInput{"missing_turns", R"([{"dialogue_id": "1_1"}])", true},
        BadInput{"bad_speaker",
                 R"([{"dialogue_id": "1_1", "turns": [{"speaker": "BOT", "utterance": "x"}]}])",
                 true},
        BadInput{"unknown_service",
                 R"([{"dialogue_id": "1_1", "turns": [{"speaker": "USER", "utterance": "x",
                   "frames": [{"service": "Nope_1", "state": {}}]}]}])",
                 false},
        BadInput{"unknown_slot",
                 R"([{"dialogue_id": "1_1", "turns": [{"speaker": "USER", "utterance": "x",
                   "frames": [{"service": "Restaurants_1", "state": {
                   "slot_values": {"color": ["red"]}}}]}]}])",
                 false},
        BadInput{"span_out_of_range",
                 R"([{"dialogue_id": "1_1", "turns": [{"speaker": "USER", "utterance": "x",
                   "frames": [{"service": "Restaurants_1", "slots": [{"slot": "city",
                   "start": 0, "exclusive_end": 9}], "state": {}}]}]}])",
                 false}),
    [](const auto& info) { return std::string(info.param.name); });

TEST(SgdIoTest, MissingDirectoryContentsIsParseError) {
  const auto dir = TempDir("empty_split");
  EXPECT_THROW(LoadDialogues(dir, {TinySchema()}), ParseError);
}

TEST(NormalizeTest, SplitsIdentifiers) {
  EXPECT_EQ(SplitIdentifierWords("FindRestaurant"), "find restaurant");
  EXPECT_EQ(SplitIdentifierWords("number_of_seats"), "number of seats");
  EXPECT_EQ(SplitIdentifierWords("HTTPServer"), "http server");
  EXPECT_EQ(SplitIdentifierWords("Restaurants_1"), "restaurants 1");
  EXPECT_EQ(SplitIdentifierWords("area2Code"), "area 2 code");
}

TEST(NormalizeTest, SpellsSmallIntegers) {
  EXPECT_EQ(SpellNumber("2"), "two");
  EXPECT_EQ(SpellNumber("0"), "zero");
  EXPECT_EQ(SpellNumber("15"), "fifteen");
  EXPECT_EQ(SpellNumber("40"), "forty");
  EXPECT_EQ(SpellNumber("99"), "ninety nine");
  EXPECT_EQ(SpellNumber("305"), "three hundred five");
  EXPECT_EQ(SpellNumber("1000"), "1000");
  EXPECT_EQ(SpellNumber("2.5"), "2.5");
  EXPECT_EQ(SpellNumber("cheap"), "cheap");
}

TEST(NormalizeTest, SplitIsIdempotentOnRandomIdentifiers) {
  Rng rng(11);
  const std::string alphabet = "abcXYZ_09-";
  for (int trial = 0; trial < 500; ++trial) {
    std::string name;
    const int len = 1 + static_cast<int>(rng.Below(12));
    for (int i = 0; i < len; ++i) name.push_back(alphabet[rng.Below(alphabet.size())]);
    const std::string once = SplitIdentifierWords(name);
    EXPECT_EQ(SplitIdentifierWords(once), once) << name;
  }
}

TEST(NormalizeTest, DisplayNamesChangeButIdentifiersDoNot) {
  ServiceSchema s = TinySchema();
  s.slots[0].possible_values = {"1", "2", "cheap"};
  s.slots[0].value_display.clear();
  const ServiceSchema n = NormalizeSchemaNames(s, true);
  EXPECT_EQ(n.intents[0].name, "FindRestaurants");
  EXPECT_EQ(n.intents[0].display_name, "find restaurants");
  EXPECT_EQ(n.slots[2].name, "restaurant_name");
  EXPECT_EQ(n.slots[2].display_name, "restaurant name");
  EXPECT_EQ(n.slots[0].possible_values, s.slots[0].possible_values);
  EXPECT_EQ(n.slots[0].value_display, (std::vector<std::string>{"one", "two", "cheap"}));
  const ServiceSchema off = NormalizeSchemaNames(s, false);
  EXPECT_EQ(off.intents[0].display_name, "FindRestaurants");
}

TEST(RegistryTest, SeenIsIntersection) {
  ServiceSchema a = TinySchema();
  ServiceSchema b = TinySchema();
  b.service_name = "Restaurants_2";
  const auto reg = MarkSeenServices({a}, {a, b});
  EXPECT_TRUE(reg.IsSeen("Restaurants_1"));
  EXPECT_FALSE(reg.IsSeen("Restaurants_2"));
  EXPECT_DOUBLE_EQ(reg.SeenFraction(), 0.5);
  const auto disjoint = MarkSeenServices({b}, {a});
  EXPECT_TRUE(disjoint.seen_services.empty());
}

}  // namespace
}  // namespace schemadst
