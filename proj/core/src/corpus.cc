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

#include "trimine/corpus.h"

#include <istream>
#include <unordered_set>

#include "json.hpp"

#include "trimine/error.h"
#include "trimine/utf8.h"

namespace trimine::corpus {

namespace {

using utf8::Codepoint;

bool is_ascii_delimiter(char32_t cp) {
  return cp == '.' || cp == '!' || cp == '?' || cp == 0x2026;
}

bool is_fullwidth_delimiter(char32_t cp) {
  return cp == 0x3002 || cp == 0xFF01 || cp == 0xFF1F;
}

bool is_delimiter(char32_t cp) {
  return is_ascii_delimiter(cp) || is_fullwidth_delimiter(cp);
}

bool is_letter(char32_t cp) {
  if (utf8::is_space(cp) || utf8::is_punct(cp)) return false;
  return !(cp >= '0' && cp <= '9');
}

std::string_view slice(std::string_view text, const std::vector<Codepoint>& cps,
                       std::size_t first, std::size_t last) {
  if (first >= last) return {};
  const std::size_t begin = cps[first].offset;
  const std::size_t end = cps[last - 1].offset + cps[last - 1].length;
  return text.substr(begin, end - begin);
}

// True when the period at `dot` closes a one-letter token that is preceded
// by other words of the same sentence.
bool is_initial(const std::vector<Codepoint>& cps, std::size_t sentence_start,
                std::size_t dot) {
  if (dot == 0 || !is_letter(cps[dot - 1].value)) return false;
  const std::size_t letter = dot - 1;
  if (letter > 0 && !utf8::is_space(cps[letter - 1].value)) return false;
  return letter > sentence_start;
}

const nlohmann::json& require(const nlohmann::json& obj, const char* field,
                              std::size_t line) {
  const auto it = obj.find(field);
  if (it == obj.end()) {
    throw RecordError(line, std::string("missing field '") + field + "'");
  }
  return *it;
}

std::string require_string(const nlohmann::json& obj, const char* field,
                           std::size_t line) {
  const auto& v = require(obj, field, line);
  if (!v.is_string()) {
    throw RecordError(line, std::string("field '") + field + "' must be a string");
  }
  return v.get<std::string>();
}

Document parse_line(const std::string& text, std::size_t line,
                    const SentenceSegmenter& segmenter) {
  nlohmann::json obj;
  try {
    obj = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw RecordError(line, std::string("invalid JSON: ") + e.what());
  }
  if (!obj.is_object()) throw RecordError(line, "expected a JSON object");

  Document doc;
  doc.id = require_string(obj, "id", line);
  if (doc.id.empty()) throw RecordError(line, "field 'id' is empty");
  doc.lang = require_string(obj, "lang", line);
  if (!is_valid_lang(doc.lang)) {
    throw RecordError(line, "field 'lang' must match [a-z]{2,3}, got '" +
                                doc.lang + "'");
  }
  doc.url = require_string(obj, "url", line);
  const auto& ts = require(obj, "timestamp", line);
  if (!ts.is_number_integer()) {
    throw RecordError(line, "field 'timestamp' must be an integer");
  }
  doc.timestamp = ts.get<std::int64_t>();
  doc.raw_text = require_string(obj, "text", line);
  doc.sentences = segmenter.segment(doc.raw_text, doc.lang);
  return doc;
}

}  // namespace

bool is_valid_lang(std::string_view lang) {
  if (lang.size() < 2 || lang.size() > 3) return false;
  for (const char c : lang) {
    if (c < 'a' || c > 'z') return false;
  }
  return true;
}

std::vector<std::string> RuleSegmenter::segment(std::string_view text,
                                                std::string_view) const {
  const std::string normalized = utf8::normalize_whitespace(text);
  const std::string_view view(normalized);
  const std::vector<Codepoint> cps = utf8::codepoints(view);

  std::vector<std::string> sentences;
  auto emit = [&](std::size_t first, std::size_t last) {
    while (first < last && utf8::is_space(cps[first].value)) ++first;
    while (last > first && utf8::is_space(cps[last - 1].value)) --last;
    if (first < last) sentences.emplace_back(slice(view, cps, first, last));
  };

  std::size_t start = 0;
  std::size_t i = 0;
  while (i < cps.size()) {
    if (!is_delimiter(cps[i].value)) {
      ++i;
      continue;
    }
    std::size_t run_end = i;
    bool fullwidth = false;
    while (run_end < cps.size() && is_delimiter(cps[run_end].value)) {
      fullwidth = fullwidth || is_fullwidth_delimiter(cps[run_end].value);
      ++run_end;
    }
    const bool boundary =
        run_end == cps.size() || utf8::is_space(cps[run_end].value);
    bool split = fullwidth || boundary;
    if (split && !fullwidth && run_end == i + 1 && cps[i].value == '.' &&
        run_end < cps.size() && is_initial(cps, start, i)) {
      split = false;
    }
    if (split) {
      emit(start, run_end);
      start = run_end;
    }
    i = run_end;
  }
  emit(start, cps.size());
  return sentences;
}

std::vector<std::string> segment_sentences(std::string_view text,
                                           std::string_view lang) {
  return RuleSegmenter{}.segment(text, lang);
}

IngestResult ingest_documents(std::istream& in, const IngestOptions& options) {
  const RuleSegmenter fallback;
  const SentenceSegmenter& segmenter =
      options.segmenter != nullptr ? *options.segmenter : fallback;

  IngestResult result;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (utf8::normalize_whitespace(line).empty()) continue;
    Document doc;
    try {
      doc = parse_line(line, line_no, segmenter);
    } catch (const RecordError& e) {
      if (!options.lenient) throw;
      result.skipped.emplace_back(e.what());
      continue;
    }
    if (!seen.insert(doc.id).second) throw DuplicateIdError(doc.id);
    result.documents.push_back(std::move(doc));
  }
  return result;
}

std::string to_jsonl(const Document& doc) {
  nlohmann::ordered_json obj;
  obj["id"] = doc.id;
  obj["lang"] = doc.lang;
  obj["url"] = doc.url;
  obj["timestamp"] = doc.timestamp;
  obj["text"] = doc.raw_text;
  return obj.dump();
}

DocumentIndex::DocumentIndex(std::span<const Document> docs) {
  by_id_.reserve(docs.size());
  for (const auto& doc : docs) {
    if (!by_id_.emplace(doc.id, &doc).second) throw DuplicateIdError(doc.id);
  }
}

const Document* DocumentIndex::find(std::string_view id) const {
  const auto it = by_id_.find(id);
  return it == by_id_.end() ? nullptr : it->second;
}

const Document& DocumentIndex::at(std::string_view id) const {
  const Document* doc = find(id);
  if (doc == nullptr) throw UnknownDocumentError(std::string(id));
  return *doc;
}

std::vector<std::string> validate(const CleaningRules& rules) {
  std::vector<std::string> violations;
  for (const auto& kw : rules.blocked_keywords) {
    if (kw.empty()) {
      violations.emplace_back("blocked-keywords: entries must be non-empty");
    } else if (utf8::to_lower(kw) != kw) {
      violations.emplace_back("blocked-keywords: '" + kw +
                              "' must be lowercase");
    }
  }
  if (rules.min_sentences < 1) {
    violations.emplace_back("min-sentences: must be >= 1, got " +
                            std::to_string(rules.min_sentences));
  }
  if (rules.min_sentences > rules.max_sentences) {
    violations.emplace_back(
        "max-sentences: must be >= min-sentences (" +
        std::to_string(rules.min_sentences) + "), got " +
        std::to_string(rules.max_sentences));
  }
  return violations;
}

std::string Rejected::message() const {
  switch (reason) {
    case Reason::kKeyword:
      return "keyword '" + detail + "'";
    case Reason::kTooFewSentences:
      return "too few sentences (" + detail + ")";
    case Reason::kTooManySentences:
      return "too many sentences (" + detail + ")";
  }
  return detail;
}

CleanResult clean_document(const Document& doc, const CleaningRules& rules) {
  if (!rules.blocked_keywords.empty()) {
    const std::string lowered = utf8::to_lower(doc.raw_text);
    for (const auto& kw : rules.blocked_keywords) {
      if (lowered.find(kw) != std::string::npos) {
        return Rejected{Rejected::Reason::kKeyword, kw};
      }
    }
  }
  const std::size_t n = doc.sentences.size();
  if (n < rules.min_sentences) {
    return Rejected{Rejected::Reason::kTooFewSentences,
                    std::to_string(n) + " < " +
                        std::to_string(rules.min_sentences)};
  }
  if (n > rules.max_sentences) {
    return Rejected{Rejected::Reason::kTooManySentences,
                    std::to_string(n) + " > " +
                        std::to_string(rules.max_sentences)};
  }
  return doc;
}

}  // namespace trimine::corpus
