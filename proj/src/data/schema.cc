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

#include "schemadst/data/schema.h"

#include <set>

#include "schemadst/common/error.h"

namespace schemadst {

const SlotDef* ServiceSchema::FindSlot(std::string_view name) const {
  for (const auto& slot : slots) {
    if (slot.name == name) return &slot;
  }
  return nullptr;
}

const IntentDef* ServiceSchema::FindIntent(std::string_view name) const {
  for (const auto& intent : intents) {
    if (intent.name == name) return &intent;
  }
  return nullptr;
}

void ValidateSchema(const ServiceSchema& schema) {
  const std::string where = "service '" + schema.service_name + "'";
  if (schema.service_name.empty()) {
    throw ValidationError("schema record with empty service_name");
  }
  if (schema.description.empty()) {
    throw ValidationError(where + ": empty description");
  }
  std::set<std::string> seen;
  for (const auto& intent : schema.intents) {
    if (!seen.insert(intent.name).second) {
      throw ValidationError(where + ": duplicate intent '" + intent.name + "'");
    }
    if (intent.description.empty()) {
      throw ValidationError(where + ": intent '" + intent.name +
                            "' has an empty description");
    }
  }
  seen.clear();
  for (const auto& slot : schema.slots) {
    if (!seen.insert(slot.name).second) {
      throw ValidationError(where + ": duplicate slot '" + slot.name + "'");
    }
    if (slot.description.empty()) {
      throw ValidationError(where + ": slot '" + slot.name +
                            "' has an empty description");
    }
    if (slot.is_categorical && slot.possible_values.empty()) {
      throw ValidationError(where + ": categorical slot '" + slot.name +
                            "' has no possible_values");
    }
    if (!slot.is_categorical && !slot.possible_values.empty()) {
      throw ValidationError(where + ": non-categorical slot '" + slot.name +
                            "' lists possible_values");
    }
    std::set<std::string> values(slot.possible_values.begin(),
                                 slot.possible_values.end());
    if (values.size() != slot.possible_values.size()) {
      throw ValidationError(where + ": slot '" + slot.name +
                            "' repeats a possible value");
    }
  }
}

void FillDisplayDefaults(ServiceSchema& schema) {
  for (auto& intent : schema.intents) {
    if (intent.display_name.empty()) intent.display_name = intent.name;
  }
  for (auto& slot : schema.slots) {
    if (slot.display_name.empty()) slot.display_name = slot.name;
    if (slot.value_display.size() != slot.possible_values.size()) {
      slot.value_display = slot.possible_values;
    }
  }
}

}  // namespace schemadst
