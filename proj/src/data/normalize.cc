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

#include "schemadst/data/normalize.h"

#include <array>
#include <cctype>
#include <charconv>

namespace schemadst {
namespace {

bool IsUpper(char c) { return std::isupper(static_cast<unsigned char>(c)); }
bool IsLower(char c) { return std::islower(static_cast<unsigned char>(c)); }
bool IsDigit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }
bool IsAlpha(char c) { return std::isalpha(static_cast<unsigned char>(c)); }

constexpr std::array<const char*, 20> kOnes = {
    "zero",    "one",     "two",       "three",    "four",
    "five",    "six",     "seven",     "eight",    "nine",
    "ten",     "eleven",  "twelve",    "thirteen", "fourteen",
    "fifteen", "sixteen", "seventeen", "eighteen", "nineteen"};
constexpr std::array<const char*, 10> kTens = {
    "", "", "twenty", "thirty", "forty", "fifty", "sixty", "seventy", "eighty",
    "ninety"};

std::string SpellBelowThousand(int n) {
  std::string out;
  if (n >= 100) {
    out = std::string(kOnes[n / 100]) + " hundred";
    n %= 100;
    if (n == 0) return out;
    out += " ";
  }
  if (n < 20) return out + kOnes[n];
  out += kTens[n / 10];
  if (n % 10) out += std::string(" ") + kOnes[n % 10];
  return out;
}

}  // namespace

std::string SplitIdentifierWords(std::string_view name) {
  std::string out;
  auto push_break = [&out] {
    if (!out.empty() && out.back() != ' ') out.push_back(' ');
  };
  for (std::size_t i = 0; i < name.size(); ++i) {
    const char c = name[i];
    if (c == '_' || c == '-' || std::isspace(static_cast<unsigned char>(c))) {
      push_break();
      continue;
    }
    if (i > 0) {
      const char prev = name[i - 1];
      const bool lower_to_upper = IsUpper(c) && (IsLower(prev) || IsDigit(prev));
      // "HTTPServer": break before the last capital of an acronym run.
      const bool acronym_end = IsUpper(c) && IsUpper(prev) &&
                               i + 1 < name.size() && IsLower(name[i + 1]);
      const bool alpha_digit = (IsDigit(c) && IsAlpha(prev)) ||
                               (IsAlpha(c) && IsDigit(prev));
      if (lower_to_upper || acronym_end || alpha_digit) push_break();
    }
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  while (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

std::string SpellNumber(std::string_view value) {
  if (value.empty() || value.size() > 3) return std::string(value);
  int n = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), n);
  if (ec != std::errc() || ptr != value.data() + value.size() || n < 0) {
    return std::string(value);
  }
  return SpellBelowThousand(n);
}

ServiceSchema NormalizeSchemaNames(const ServiceSchema& schema, bool enabled) {
  ServiceSchema out = schema;
  FillDisplayDefaults(out);
  if (!enabled) return out;
  for (auto& intent : out.intents) {
    intent.display_name = SplitIdentifierWords(intent.display_name);
  }
  for (auto& slot : out.slots) {
    slot.display_name = SplitIdentifierWords(slot.display_name);
    for (auto& value : slot.value_display) value = SpellNumber(value);
  }
  return out;
}

}  // namespace schemadst
