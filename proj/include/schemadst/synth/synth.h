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

#ifndef SCHEMADST_SYNTH_SYNTH_H_
#define SCHEMADST_SYNTH_SYNTH_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "schemadst/data/dialogue.h"
#include "schemadst/data/registry.h"
#include "schemadst/data/schema.h"
#include "schemadst/examples/tokenizer.h"

namespace schemadst {

struct SynthConfig {
  int n_services = 12;
  double unseen_fraction = 0.25;  // of n_services, evaluation only
  int intents_per_service = 2;
  int slots_per_service = 8;
  double categorical_fraction = 0.35;
  int values_per_categorical = 4;  // cap; templates may offer fewer
  int n_dialogues = 300;
  double eval_fraction = 0.3;        // of dialogues over seen services
  int min_turns = 4;
  int max_turns = 8;
  double multi_service_fraction = 0.3;
  // Targets for the share of negative STATUS and REQUESTED examples; the
  // per-turn update and request rates are derived from them.
  double status_negative_ratio = 0.89;
  double requested_negative_ratio = 0.98;
  double dontcare_probability = 0.1;
  double offer_probability = 0.3;
  double intent_change_probability = 0.15;
  std::uint64_t seed = 7;

  // Throws ConfigError for infeasible settings.
  void Validate() const;
  nlohmann::json ToJson() const;
  static SynthConfig FromJson(const nlohmann::json& j);
};

struct SynthCorpus {
  std::vector<ServiceSchema> train_schemas;  // seen services
  std::vector<ServiceSchema> eval_schemas;   // every service used in eval
  std::vector<Dialogue> train_dialogues;
  std::vector<Dialogue> eval_dialogues;
  ServiceRegistry registry;
  Vocabulary vocabulary;  // covers every generated word without [UNK]
};

SynthCorpus GenerateCorpus(const SynthConfig& config);

// <dir>/train/{schema.json,dialogues_001.json}, <dir>/dev/..., <dir>/vocab.txt.
void WriteCorpus(const SynthCorpus& corpus, const std::filesystem::path& dir);

// Every word the generator can emit, one text per template and value.
std::vector<std::string> SynthWordList();

}  // namespace schemadst

#endif  // SCHEMADST_SYNTH_SYNTH_H_
