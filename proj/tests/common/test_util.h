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

// Shared fixtures for unit and acceptance tests.

#ifndef SCHEMADST_TESTS_COMMON_TEST_UTIL_H_
#define SCHEMADST_TESTS_COMMON_TEST_UTIL_H_

#include <filesystem>
#include <string>
#include <vector>

#include "schemadst/data/dialogue.h"
#include "schemadst/data/schema.h"
#include "schemadst/examples/tokenizer.h"
#include "schemadst/model/nlu_model.h"

namespace schemadst::testing {

// 2 intents, 3 slots: one categorical with 4 values and two free-form ones.
ServiceSchema TinySchema();

// A turn of TinySchema's service with a system offer and a user inform.
DialogueTurn TinyTurn();

// Vocabulary covering TinySchema and TinyTurn.
Vocabulary TinyVocabulary();

// L=1, d=8 encoder without dropout.
ModelConfig TinyModelConfig(int vocab_size, std::uint64_t seed = 3);

// Fresh empty directory under the system temp dir.
std::filesystem::path TempDir(const std::string& name);

}  // namespace schemadst::testing

#endif  // SCHEMADST_TESTS_COMMON_TEST_UTIL_H_
