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

#ifndef SCHEMADST_DATA_SCHEMA_H_
#define SCHEMADST_DATA_SCHEMA_H_

#include <string>
#include <string_view>
#include <vector>

namespace schemadst {

struct IntentDef {
  std::string name;
  std::string description;
  // Text used when the intent is rendered into model input. Equals `name`
  // unless name normalization rewrote it.
  std::string display_name;
};

struct SlotDef {
  std::string name;
  std::string description;
  bool is_categorical = false;
  std::vector<std::string> possible_values;
  std::string display_name;
  // Parallel to possible_values; the rendering used in model input.
  std::vector<std::string> value_display;

  const std::string& ValueDisplay(std::size_t i) const {
    return i < value_display.size() ? value_display[i] : possible_values[i];
  }
};

// A service's natural-language ontology.
struct ServiceSchema {
  std::string service_name;
  std::string description;
  std::vector<IntentDef> intents;
  std::vector<SlotDef> slots;

  const SlotDef* FindSlot(std::string_view name) const;
  const IntentDef* FindIntent(std::string_view name) const;
};

// Checks every ServiceSchema invariant; throws ValidationError naming the
// offending service and element.
void ValidateSchema(const ServiceSchema& schema);

// Fills empty display names/value renderings from the identifiers.
void FillDisplayDefaults(ServiceSchema& schema);

}  // namespace schemadst

#endif  // SCHEMADST_DATA_SCHEMA_H_
