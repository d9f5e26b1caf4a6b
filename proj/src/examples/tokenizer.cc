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

#include "schemadst/examples/tokenizer.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>

#include "schemadst/common/error.h"

namespace schemadst {
namespace {

bool IsSpace(char c) { return std::isspace(static_cast<unsigned char>(c)); }

bool IsPunct(char c) {
  const auto u = static_cast<unsigned char>(c);
  return u < 0x80 && std::ispunct(u);
}

std::string Lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

// Splits a word into whole UTF-8 characters.
std::vector<std::string> Characters(std::string_view word) {
  std::vector<std::string> chars;
  for (std::size_t i = 0; i < word.size();) {
    std::size_t len = 1;
    const auto lead = static_cast<unsigned char>(word[i]);
    if (lead >= 0xF0) len = 4;
    else if (lead >= 0xE0) len = 3;
    else if (lead >= 0xC0) len = 2;
    len = std::min(len, word.size() - i);
    chars.emplace_back(word.substr(i, len));
    i += len;
  }
  return chars;
}

}  // namespace

Vocabulary::Vocabulary(std::vector<std::string> tokens) : tokens_(std::move(tokens)) {
  for (int i = 0; i < static_cast<int>(tokens_.size()); ++i) {
    if (!ids_.emplace(tokens_[i], i).second) {
      throw ValidationError("duplicate vocabulary token '" + tokens_[i] + "'");
    }
  }
}

Vocabulary Vocabulary::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open vocabulary " + path.string());
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    tokens.push_back(line);
  }
  Vocabulary vocab(std::move(tokens));
  for (const char* special : {kPadToken, kUnkToken, kClsToken, kSepToken}) {
    if (!vocab.Contains(special)) {
      throw ValidationError(path.string() + ": vocabulary lacks " + special);
    }
  }
  return vocab;
}

void Vocabulary::Save(const std::filesystem::path& path) const {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  for (const auto& token : tokens_) out << token << "\n";
}

bool Vocabulary::Contains(std::string_view token) const {
  return ids_.count(std::string(token)) > 0;
}

int Vocabulary::Find(std::string_view token) const {
  auto it = ids_.find(std::string(token));
  return it == ids_.end() ? -1 : it->second;
}

std::uint64_t Vocabulary::Fingerprint() const {
  std::uint64_t h = 1469598103934665603ULL;
  for (const auto& token : tokens_) {
    for (unsigned char c : token) {
      h ^= c;
      h *= 1099511628211ULL;
    }
    h ^= 0xff;
    h *= 1099511628211ULL;
  }
  return h;
}

std::vector<std::pair<int, int>> SplitWords(std::string_view text) {
  std::vector<std::pair<int, int>> words;
  int start = -1;
  const int n = static_cast<int>(text.size());
  for (int i = 0; i < n; ++i) {
    const char c = text[i];
    if (IsSpace(c) || IsPunct(c)) {
      if (start >= 0) words.emplace_back(start, i);
      start = -1;
      if (IsPunct(c)) words.emplace_back(i, i + 1);
    } else if (start < 0) {
      start = i;
    }
  }
  if (start >= 0) words.emplace_back(start, n);
  return words;
}

Vocabulary BuildVocabulary(const std::vector<std::string>& texts,
                           const VocabularyOptions& options) {
  std::map<std::string, int> counts;
  std::set<std::string> chars;
  for (const auto& raw : texts) {
    const std::string text = options.lowercase ? Lower(raw) : raw;
    for (auto [b, e] : SplitWords(text)) {
      const std::string word = text.substr(b, e - b);
      ++counts[word];
      for (auto& ch : Characters(word)) chars.insert(ch);
    }
  }
  std::vector<std::string> tokens = {kPadToken, kUnkToken, kClsToken, kSepToken};
  for (const auto& ch : chars) tokens.push_back(ch);
  for (const auto& ch : chars) tokens.push_back("##" + ch);

  std::vector<std::pair<std::string, int>> words;
  for (const auto& [word, count] : counts) {
    if (count >= options.min_count && word.size() > 1) words.emplace_back(word, count);
  }
  std::stable_sort(words.begin(), words.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  const int limit = std::min<int>(options.max_words, words.size());
  for (int i = 0; i < limit; ++i) tokens.push_back(words[i].first);
  return Vocabulary(std::move(tokens));
}

WordPieceTokenizer::WordPieceTokenizer(Vocabulary vocabulary, bool lowercase,
                                       int max_chars_per_word)
    : vocabulary_(std::move(vocabulary)),
      lowercase_(lowercase),
      max_chars_per_word_(max_chars_per_word) {
  if (vocabulary_.Find(kUnkToken) < 0 || vocabulary_.Find(kClsToken) < 0 ||
      vocabulary_.Find(kSepToken) < 0 || vocabulary_.Find(kPadToken) < 0) {
    throw ValidationError("vocabulary lacks special tokens");
  }
}

std::vector<Token> WordPieceTokenizer::Tokenize(std::string_view raw) const {
  const std::string text = lowercase_ ? Lower(raw) : std::string(raw);
  const int unk = vocabulary_.Find(kUnkToken);
  std::vector<Token> out;
  std::string candidate;
  for (auto [word_begin, word_end] : SplitWords(text)) {
    if (word_end - word_begin > max_chars_per_word_) {
      out.push_back({unk, word_begin, word_end});
      continue;
    }
    const std::size_t mark = out.size();
    bool bad = false;
    int start = word_begin;
    while (start < word_end) {
      int end = word_end;
      int found = -1;
      while (start < end) {
        candidate.assign(start > word_begin ? "##" : "");
        candidate.append(text, start, end - start);
        found = vocabulary_.Find(candidate);
        if (found >= 0) break;
        --end;
      }
      if (found < 0) {
        bad = true;
        break;
      }
      out.push_back({found, start, end});
      start = end;
    }
    if (bad) {
      out.resize(mark);
      out.push_back({unk, word_begin, word_end});
    }
  }
  return out;
}

}  // namespace schemadst
