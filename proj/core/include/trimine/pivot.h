// Copyright 2026 The Trimine Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "trimine/corpus.h"

namespace trimine::pivot {

// Word-to-word dictionary into English, keyed by (source language, word).
class Lexicon {
 public:
  // Returns false and keeps the existing mapping when the key is present.
  bool insert(std::string_view lang, std::string_view word,
              std::string_view english);

  // Null when the key is absent.
  const std::string* find(std::string_view lang, std::string_view word) const;

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

 private:
  static std::string key(std::string_view lang, std::string_view word);

  std::unordered_map<std::string, std::string> entries_;
};

struct LexiconLoad {
  Lexicon lexicon;
  std::size_t loaded = 0;
  std::size_t ignored = 0;  // duplicate keys; the first mapping is kept
};

// Reads `lang<TAB>src_word<TAB>en_word` lines. Source words are lowercased.
// Throws RecordError on a line without exactly three non-empty fields.
LexiconLoad load_lexicon(std::istream& in);

struct PivotText {
  corpus::DocId doc_id;
  std::vector<std::string> tokens;

  friend bool operator==(const PivotText&, const PivotText&) = default;
};

// Produces the English text used for similarity scoring.
class PivotTranslator {
 public:
  virtual ~PivotTranslator() = default;
  virtual PivotText translate(const corpus::Document& doc) const = 0;
};

// Dictionary lookup per token. Tokens are lowercased whitespace tokens with
// edge punctuation removed; unknown words pass through. A token with CJK
// characters that misses the dictionary as a whole is looked up one
// ideograph at a time.
class LexiconTranslator final : public PivotTranslator {
 public:
  explicit LexiconTranslator(const Lexicon& lexicon) : lexicon_(&lexicon) {}

  PivotText translate(const corpus::Document& doc) const override;

 private:
  const Lexicon* lexicon_;
};

PivotText translate_to_pivot(const corpus::Document& doc, const Lexicon& lex);

// Lowercased, punctuation-stripped whitespace tokens; empties dropped.
std::vector<std::string> pivot_tokens(std::string_view text);

std::string to_jsonl(const PivotText& pivot);
PivotText pivot_from_json(std::string_view line, std::size_t line_no);

}  // namespace trimine::pivot
