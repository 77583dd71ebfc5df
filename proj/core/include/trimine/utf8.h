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

#include <string>
#include <string_view>
#include <vector>

// Minimal UTF-8 helpers shared by the segmenter, tokenizers and BLEU scorer.
// Invalid bytes decode as U+FFFD and consume one byte, so every routine here
// is total over arbitrary input.
namespace trimine::utf8 {

struct Codepoint {
  char32_t value;
  std::size_t offset;  // byte offset of the first code unit
  std::size_t length;  // number of bytes
};

// Decodes the codepoint starting at `pos`. `pos` must be < text.size().
Codepoint decode(std::string_view text, std::size_t pos);

std::vector<Codepoint> codepoints(std::string_view text);

void append(std::string& out, char32_t cp);

bool is_space(char32_t cp);

// ASCII punctuation plus the common Unicode punctuation blocks (general
// punctuation, CJK symbols, fullwidth forms, Latin-1 marks).
bool is_punct(char32_t cp);

// CJK ideographs, kana, hangul and compatibility ideographs.
bool is_cjk(char32_t cp);

char32_t to_lower(char32_t cp);

std::string to_lower(std::string_view text);

// Collapses every run of whitespace to one ASCII space and trims both ends.
std::string normalize_whitespace(std::string_view text);

// Splits on runs of whitespace; no empty elements.
std::vector<std::string> split_whitespace(std::string_view text);

// Removes leading and trailing punctuation codepoints.
std::string strip_punct(std::string_view token);

}  // namespace trimine::utf8
