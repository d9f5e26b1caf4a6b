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

#ifndef SCHEMADST_EXAMPLES_TOKENIZER_H_
#define SCHEMADST_EXAMPLES_TOKENIZER_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace schemadst {

inline constexpr char kPadToken[] = "[PAD]";
inline constexpr char kUnkToken[] = "[UNK]";
inline constexpr char kClsToken[] = "[CLS]";
inline constexpr char kSepToken[] = "[SEP]";

// A token id plus the byte range [start, end) it covers in the source text.
struct Token {
  int id = 0;
  int start = 0;
  int end = 0;
};

class Vocabulary {
 public:
  Vocabulary() = default;
  explicit Vocabulary(std::vector<std::string> tokens);

  // One token per line (the BERT vocab.txt layout).
  static Vocabulary Load(const std::filesystem::path& path);
  void Save(const std::filesystem::path& path) const;

  int size() const { return static_cast<int>(tokens_.size()); }
  bool Contains(std::string_view token) const;
  // -1 when absent.
  int Find(std::string_view token) const;
  const std::string& Token(int id) const { return tokens_.at(id); }
  const std::vector<std::string>& tokens() const { return tokens_; }

  // FNV-1a over the token list; recorded in checkpoints.
  std::uint64_t Fingerprint() const;

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, int> ids_;
};

struct VocabularyOptions {
  bool lowercase = true;
  int min_count = 1;
  int max_words = 4000;
};

// Special tokens, every observed character (plain and "##" forms), then the
// most frequent whole words. Any word over observed characters is therefore
// coverable without [UNK].
Vocabulary BuildVocabulary(const std::vector<std::string>& texts,
                           const VocabularyOptions& options = {});

// Whitespace/punctuation pre-tokenization with byte offsets. Punctuation
// characters become single-character words.
std::vector<std::pair<int, int>> SplitWords(std::string_view text);

class Tokenizer {
 public:
  virtual ~Tokenizer() = default;
  virtual std::vector<Token> Tokenize(std::string_view text) const = 0;
  virtual const Vocabulary& vocabulary() const = 0;

  int pad_id() const { return vocabulary().Find(kPadToken); }
  int unk_id() const { return vocabulary().Find(kUnkToken); }
  int cls_id() const { return vocabulary().Find(kClsToken); }
  int sep_id() const { return vocabulary().Find(kSepToken); }
};

// Greedy longest-match-first subword tokenizer with "##" continuations.
class WordPieceTokenizer : public Tokenizer {
 public:
  explicit WordPieceTokenizer(Vocabulary vocabulary, bool lowercase = true,
                              int max_chars_per_word = 100);

  std::vector<Token> Tokenize(std::string_view text) const override;
  const Vocabulary& vocabulary() const override { return vocabulary_; }
  bool lowercase() const { return lowercase_; }

 private:
  Vocabulary vocabulary_;
  bool lowercase_;
  int max_chars_per_word_;
};

}  // namespace schemadst

#endif  // SCHEMADST_EXAMPLES_TOKENIZER_H_
