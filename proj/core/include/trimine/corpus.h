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
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

namespace trimine::corpus {

using DocId = std::string;

// One ingested article. Immutable after ingestion.
struct Document {
  DocId id;
  std::string lang;  // ISO-639 code, [a-z]{2,3}
  std::string url;
  std::int64_t timestamp = 0;  // UTC epoch seconds
  std::vector<std::string> sentences;
  std::string raw_text;

  friend bool operator==(const Document&, const Document&) = default;
};

bool is_valid_lang(std::string_view lang);

// Splits text into sentences. Implementations must be deterministic and
// never return empty elements.
class SentenceSegmenter {
 public:
  virtual ~SentenceSegmenter() = default;
  virtual std::vector<std::string> segment(std::string_view text,
                                           std::string_view lang) const = 0;
};

// Delimiter-driven segmenter.
//
// Splits after `.` `!` `?` `…` when followed by whitespace or end of text,
// and after the fullwidth `。` `！` `？` unconditionally. A run of
// consecutive delimiters stays with the sentence on its left. A lone period
// closing a single-letter token in the middle of a sentence ("John F.
// Kennedy") does not split. Whitespace is collapsed before splitting.
class RuleSegmenter final : public SentenceSegmenter {
 public:
  std::vector<std::string> segment(std::string_view text,
                                   std::string_view lang) const override;
};

std::vector<std::string> segment_sentences(std::string_view text,
                                           std::string_view lang);

struct IngestOptions {
  // Skip malformed lines instead of failing on the first one.
  bool lenient = false;
  const SentenceSegmenter* segmenter = nullptr;  // null: RuleSegmenter
};

struct IngestResult {
  std::vector<Document> documents;
  std::vector<std::string> skipped;  // diagnostics for lenient skips
};

// Reads one JSON object per line with fields id, lang, url, timestamp, text.
// Blank lines are ignored, unknown fields are ignored. Throws RecordError for
// malformed lines (unless lenient) and DuplicateIdError on a repeated id.
IngestResult ingest_documents(std::istream& in, const IngestOptions& options = {});

// Serializes a document as one JSONL line (no trailing newline).
std::string to_jsonl(const Document& doc);

// Id lookup over documents owned elsewhere; the span must outlive it.
class DocumentIndex {
 public:
  explicit DocumentIndex(std::span<const Document> docs);

  const Document* find(std::string_view id) const;
  // Throws UnknownDocumentError.
  const Document& at(std::string_view id) const;
  std::size_t size() const { return by_id_.size(); }

 private:
  std::unordered_map<std::string_view, const Document*> by_id_;
};

struct CleaningRules {
  std::vector<std::string> blocked_keywords;  // lowercase, non-empty
  std::size_t min_sentences = 2;
  std::size_t max_sentences = 512;
};

// Returns one message per violated invariant.
std::vector<std::string> validate(const CleaningRules& rules);

struct Rejected {
  enum class Reason { kKeyword, kTooFewSentences, kTooManySentences };
  Reason reason;
  std::string detail;

  std::string message() const;
};

using CleanResult = std::variant<Document, Rejected>;

// Document-level filter. Reports the first triggering reason: keywords in
// list order, then the sentence-count bounds.
CleanResult clean_document(const Document& doc, const CleaningRules& rules);

}  // namespace trimine::corpus
