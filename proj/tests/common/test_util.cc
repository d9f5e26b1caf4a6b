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

#include "test_util.h"

#include <unistd.h>

namespace schemadst::testing {

ServiceSchema TinySchema() {
  ServiceSchema s;
  s.service_name = "Restaurants_1";
  s.description = "find and reserve tables at restaurants";
  s.intents = {{"FindRestaurants", "search for restaurants", ""},
               {"ReserveRestaurant", "reserve a table at a restaurant", ""}};
  SlotDef price;
  price.name = "price_range";
  price.description = "price range of the place";
  price.is_categorical = true;
  price.possible_values = {"cheap", "moderate", "expensive", "very expensive"};
  SlotDef city;
  city.name = "city";
  city.description = "name of the city";
  SlotDef restaurant;
  restaurant.name = "restaurant_name";
  restaurant.description = "name of the restaurant";
  s.slots = {price, city, restaurant};
  FillDisplayDefaults(s);
  return s;
}

DialogueTurn TinyTurn() {
  DialogueTurn turn;
  turn.dialogue_id = "1_00000";
  turn.turn_index = 1;
  turn.system_utterance = "how about river cafe for the restaurant name ?";
  turn.user_utterance = "yes . i want the city to be san jose and it should be cheap .";
  FrameAnnotation frame;
  frame.service = "Restaurants_1";
  frame.active_intent = "FindRestaurants";
  frame.requested_slots = {"price_range"};
  frame.state_slot_values = {{"city", {"san jose"}},
                             {"price_range", {"cheap"}},
                             {"restaurant_name", {"river cafe"}}};
  frame.turn_spans = {{"restaurant_name", UtteranceRole::kSystem, 10, 20},
                      {"city", UtteranceRole::kUser, 28, 36}};
  turn.frames = {frame};
  return turn;
}

Vocabulary TinyVocabulary() {
  const ServiceSchema s = TinySchema();
  const DialogueTurn t = TinyTurn();
  std::vector<std::string> texts = {t.system_utterance, t.user_utterance, s.description,
                                    ": _"};
  for (const auto& i : s.intents) {
    texts.push_back(i.name);
    texts.push_back(i.description);
  }
  for (const auto& slot : s.slots) {
    texts.push_back(slot.name);
    texts.push_back(slot.description);
    for (const auto& v : slot.possible_values) texts.push_back(v);
  }
  return BuildVocabulary(texts);
}

ModelConfig TinyModelConfig(int vocab_size, std::uint64_t seed) {
  ModelConfig c;
  c.encoder.vocab_size = vocab_size;
  c.encoder.max_positions = 128;
  c.encoder.layers = 1;
  c.encoder.hidden = 8;
  c.encoder.heads = 2;
  c.encoder.feed_forward = 16;
  c.encoder.dropout = 0.0;
  c.seed = seed;
  return c;
}

std::filesystem::path TempDir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() /
                   ("schemadst_test_" + std::to_string(getpid())) / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace schemadst::testing
