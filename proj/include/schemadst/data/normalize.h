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

#ifndef SCHEMADST_DATA_NORMALIZE_H_
#define SCHEMADST_DATA_NORMALIZE_H_

#include <string>
#include <string_view>

#include "schemadst/data/schema.h"

namespace schemadst {

// "FindRestaurant" -> "find restaurant", "number_of_seats" -> "number of
// seats". Idempotent.
std::string SplitIdentifierWords(std::string_view name);

// "2" -> "two" for integers in [0, 999]; anything else is returned as is.
std::string SpellNumber(std::string_view value);

// Returns a copy whose display names (and numeric categorical value
// renderings) are normalized. Identifiers are untouched. Identity when
// `enabled` is false.
ServiceSchema NormalizeSchemaNames(const ServiceSchema& schema, bool enabled);

}  // namespace schemadst

#endif  // SCHEMADST_DATA_NORMALIZE_H_
