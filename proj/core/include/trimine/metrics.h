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

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace trimine::metrics {

// Case-preserving BLEU tokenization: punctuation and CJK characters become
// single tokens, everything else splits on whitespace.
std::vector<std::string> bleu_tokenize(std::string_view text);

struct DocPair {
  std::string hypothesis;
  std::string reference;
};

// Sufficient statistics; these add across documents.
struct BleuStats {
  std::vector<std::size_t> matches;  // clipped n-gram matches, n = 1..max_n
  std::vector<std::size_t> totals;   // hypothesis n-grams, n = 1..max_n
  std::size_t hyp_length = 0;
  std::size_t ref_length = 0;

  explicit BleuStats(std::size_t max_n = 4) : matches(max_n, 0), totals(max_n, 0) {}

  BleuStats& operator+=(const BleuStats& other);
};

BleuStats document_stats(std::span<const std::string> hyp,
                         std::span<const std::string> ref, std::size_t max_n = 4);

struct BleuReport {
  double score = 0.0;  // 0..100
  std::vector<double> precisions;
  double brevity_penalty = 0.0;
  std::size_t hyp_length = 0;
  std::size_t ref_length = 0;
};

BleuReport bleu_from_stats(const BleuStats& stats);

// Corpus BLEU where every segment is a whole document. No smoothing: a zero
// precision gives a score of 0. Throws Error on an empty pair list or an
// empty reference.
BleuReport d_bleu(std::span<const DocPair> pairs, std::size_t max_n = 4);

std::string to_json(const BleuReport& report);

}  // namespace trimine::metrics
