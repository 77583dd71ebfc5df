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

#include "trimine/pivot.h"

#include <istream>

#include "json.hpp"

#include "trimine/error.h"
#include "trimine/utf8.h"

namespace trimine::pivot {

namespace {

constexpr std::string_view kEnglish = "en";

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

bool has_cjk(std::string_view token) {
  for (const auto& cp : utf8::codepoints(token)) {
    if (utf8::is_cjk(cp.value)) return true;
  }
  return false;
}

}  // namespace

std::string Lexicon::key(std::string_view lang, std::string_view word) {
  std::string k;
  k.reserve(lang.size() + 1 + word.size());
  k.append(lang);
  k.push_back('\t');
  k.append(word);
  return k;
}

bool Lexicon::insert(std::string_view lang, std::string_view word,
                     std::string_view english) {
  return entries_.try_emplace(key(lang, word), english).second;
}

const std::string* Lexicon::find(std::string_view lang,
                                 std::string_view word) const {
  const auto it = entries_.find(key(lang, word));
  return it == entries_.end() ? nullptr : &it->second;
}

LexiconLoad load_lexicon(std::istream& in) {
  LexiconLoad out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_tabs(line);
    if (fields.size() != 3) {
      throw RecordError(line_no, "expected 3 tab-separated fields, got " +
                                     std::to_string(fields.size()));
    }
    for (const auto f : fields) {
      if (f.empty()) throw RecordError(line_no, "empty lexicon field");
    }
    if (!corpus::is_valid_lang(fields[0])) {
      throw RecordError(line_no, "invalid language code '" +
                                     std::string(fields[0]) + "'");
    }
    if (out.lexicon.insert(fields[0], utf8::to_lower(fields[1]), fields[2])) {
      ++out.loaded;
    } else {
      ++out.ignored;
    }
  }
  return out;
}

std::vector<std::string> pivot_tokens(std::string_view text) {
  std::vector<std::string> tokens;
  for (const auto& word : utf8::split_whitespace(text)) {
    std::string stripped = utf8::strip_punct(utf8::to_lower(word));
    if (!stripped.empty()) tokens.push_back(std::move(stripped));
  }
  return tokens;
}

PivotText LexiconTranslator::translate(const corpus::Document& doc) const {
  PivotText out{doc.id, {}};
  const bool english = doc.lang == kEnglish;
  for (auto& token : pivot_tokens(doc.raw_text)) {
    if (english) {
      out.tokens.push_back(std::move(token));
      continue;
    }
    if (const std::string* hit = lexicon_->find(doc.lang, token)) {
      out.tokens.push_back(*hit);
      continue;
    }
    if (!has_cjk(token)) {
      out.tokens.push_back(std::move(token));
      continue;
    }
    // Per-ideograph fallback; non-CJK runs stay whole.
    std::string run;
    auto flush = [&] {
      if (run.empty()) return;
      const std::string* mapped = lexicon_->find(doc.lang, run);
      out.tokens.push_back(mapped != nullptr ? *mapped : run);
      run.clear();
    };
    for (const auto& cp : utf8::codepoints(token)) {
      const std::string_view piece(token.data() + cp.offset, cp.length);
      if (utf8::is_cjk(cp.value)) {
        flush();
        run.assign(piece);
        flush();
      } else {
        run.append(piece);
      }
    }
    flush();
  }
  return out;
}

PivotText translate_to_pivot(const corpus::Document& doc, const Lexicon& lex) {
  return LexiconTranslator(lex).translate(doc);
}

std::string to_jsonl(const PivotText& pivot) {
  nlohmann::ordered_json obj;
  obj["id"] = pivot.doc_id;
  obj["tokens"] = pivot.tokens;
  return obj.dump();
}

PivotText pivot_from_json(std::string_view line, std::size_t line_no) {
  try {
    const auto obj = nlohmann::json::parse(line);
    return PivotText{obj.at("id").get<std::string>(),
                     obj.at("tokens").get<std::vector<std::string>>()};
  } catch (const nlohmann::json::exception& e) {
    throw RecordError(line_no, std::string("invalid pivot record: ") + e.what());
  }
}

}  // namespace trimine::pivot
