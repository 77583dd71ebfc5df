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
#include <string>
#include <vector>

#include "trimine/corpus.h"

namespace trimine::synthetic {

// Generator for multilingual news-like corpora with planted translations.
//
// Each story is written in English from a Zipf-distributed vocabulary and
// then rendered into the other languages by a fixed word mapping, with some
// sentences dropped or swapped per language. Every language version gets
// its own URL and a timestamp jittered around the story time. A fraction of
// stories also get a near-duplicate crawl of one version under a URL that
// only differs in case, trailing slash and fragment.
struct CorpusSpec {
  std::size_t stories = 30;
  std::vector<std::string> langs = {"en", "de", "fr"};
  std::int64_t start_timestamp = 1767225600;  // 2026-01-01T00:00:00Z
  std::int64_t story_interval_seconds = 86400;
  std::int64_t jitter_seconds = 2 * 86400;
  std::size_t vocabulary = 1500;
  std::size_t min_sentences = 3;
  std::size_t max_sentences = 8;
  double missing_language_rate = 0.1;
  double duplicate_crawl_rate = 0.1;
  double spam_rate = 0.05;         // documents carrying a blocked keyword
  double short_document_rate = 0.05;  // single-sentence documents
  double lexicon_coverage = 0.95;
  std::uint64_t seed = 1;
};

struct Corpus {
  std::vector<corpus::Document> documents;  // sorted by id
  std::string lexicon_tsv;
  std::vector<std::string> blocked_keywords;
};

Corpus generate(const CorpusSpec& spec);

}  // namespace trimine::synthetic
