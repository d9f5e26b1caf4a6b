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

// Fixed template bank of the synthetic corpus generator.

#ifndef SCHEMADST_SRC_SYNTH_BANK_H_
#define SCHEMADST_SRC_SYNTH_BANK_H_

#include <string>
#include <vector>

namespace schemadst::synth {

struct SlotTemplate {
  std::string name;
  std::string description;
  std::string phrase;  // how utterances refer to the slot
  bool categorical = false;
  std::vector<std::string> values;
};

struct IntentTemplate {
  std::string name;
  std::string description;
  std::string phrase;  // "find a restaurant"
};

struct DomainTemplate {
  std::string name;
  std::string description;
  std::vector<IntentTemplate> intents;
  std::vector<std::string> slots;  // SlotTemplate names
};

const std::vector<SlotTemplate>& SlotTemplates();
const SlotTemplate& FindSlotTemplate(const std::string& name);
const std::vector<DomainTemplate>& DomainTemplates();

// Fixed utterance fragments.
const std::vector<std::string>& InformPatterns();    // {slot}, {value}
const std::vector<std::string>& DontcarePatterns();  // {slot}
const std::vector<std::string>& RequestPatterns();   // {slot}
const std::vector<std::string>& FillerPatterns();
extern const char kIntentPattern[];         // {intent}
extern const char kIntentChangePattern[];   // {intent}
extern const char kAckPattern[];            // {intent}
extern const char kAnswerPattern[];         // {slot}, {value}
extern const char kOfferPattern[];          // {slot}, {value}
extern const char kAcceptPattern[];
extern const char kSwitchPrompt[];

}  // namespace schemadst::synth

#endif  // SCHEMADST_SRC_SYNTH_BANK_H_
