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

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "trimine/corpus.h"
#include "trimine/pivot.h"

namespace trimine::pairing {

using TermId = std::uint32_t;

// Sparse, L2-normalized tf-idf weights sorted by term id. Zero weights are
// never stored; an empty vector stands for a document with no terms.
struct TfIdfVector {
  corpus::DocId doc_id;
  std::vector<std::pair<TermId, double>> weights;

  bool empty() const { return weights.empty(); }
};

// tf-idf vectors for one corpus. Term ids follow lexicographic term order,
// so the index does not depend on the order pivots were supplied in.
class TfIdfIndex {
 public:
  TfIdfIndex() = default;
  // position_ holds views into vectors_, so copies are not allowed.
  TfIdfIndex(const TfIdfIndex&) = delete;
  TfIdfIndex& operator=(const TfIdfIndex&) = delete;
  TfIdfIndex(TfIdfIndex&&) = default;
  TfIdfIndex& operator=(TfIdfIndex&&) = default;

  const TfIdfVector* find(std::string_view doc_id) const;
  // Throws UnknownDocumentError.
  const TfIdfVector& at(std::string_view doc_id) const;

  std::size_t size() const { return vectors_.size(); }
  std::span<const TfIdfVector> vectors() const { return vectors_; }
  std::span<const std::string> vocabulary() const { return vocabulary_; }
  double idf(TermId term) const { return idf_[term]; }

 private:
  friend TfIdfIndex build_tfidf_index(std::span<const pivot::PivotText>,
                                      unsigned);

  std::vector<std::string> vocabulary_;
  std::vector<double> idf_;
  std::vector<TfIdfVector> vectors_;
  std::unordered_map<std::string_view, std::size_t> position_;
};

// tf = raw count, idf = ln((1 + N) / (1 + df)) + 1, weight = tf * idf, then
// L2 normalization. Throws DuplicateIdError on repeated doc ids.
TfIdfIndex build_tfidf_index(std::span<const pivot::PivotText> pivots,
                             unsigned jobs = 1);

// Cosine of two vectors from the same index, clamped to [0, 1]. Symmetric
// bit for bit.
double score_pair(const TfIdfVector& a, const TfIdfVector& b);

struct PairingConfig {
  std::int64_t window_seconds = 604800;  // one week
  double tfidf_threshold = 0.30;
  std::optional<double> embed_threshold;
};

std::vector<std::string> validate(const PairingConfig& cfg);

// Unordered candidate; `a` < `b` lexicographically. The views point into
// the documents passed to candidate_pairs.
struct Candidate {
  std::string_view a;
  std::string_view b;

  friend bool operator==(const Candidate&, const Candidate&) = default;
  friend auto operator<=>(const Candidate&, const Candidate&) = default;
};

// All cross-language pairs whose timestamps differ by at most
// window_seconds, sorted by (a, b). Runs a sliding window over the
// timestamp order, so cost scales with the candidates found rather than
// with n^2.
std::vector<Candidate> candidate_pairs(std::span<const corpus::Document> docs,
                                       const PairingConfig& cfg);

// Second-stage filter over two documents, returning a score in [0, 1].
class EmbeddingScorer {
 public:
  virtual ~EmbeddingScorer() = default;
  virtual double score(const corpus::Document& a,
                       const corpus::Document& b) const = 0;
};

// Token-set Jaccard overlap of pivot texts. An offline stand-in for a
// multilingual sentence-embedding model.
class JaccardScorer final : public EmbeddingScorer {
 public:
  explicit JaccardScorer(std::span<const pivot::PivotText> pivots);

  double score(const corpus::Document& a,
               const corpus::Document& b) const override;

 private:
  std::unordered_map<std::string, std::vector<std::string>> token_sets_;
};

struct BilingualPair {
  corpus::DocId doc_a;  // doc_a < doc_b
  corpus::DocId doc_b;
  double similarity = 0.0;
  std::optional<double> embed_score;

  // "a|b"; used as the provenance reference of linked triples.
  std::string ref() const { return doc_a + "|" + doc_b; }

  friend bool operator==(const BilingualPair&, const BilingualPair&) = default;
};

// Keeps candidates with similarity >= tfidf_threshold (and, when both
// `scorer` and embed_threshold are set, embed score >= embed_threshold),
// then admits them greedily by (similarity desc, a, b) so every document
// keeps at most one partner per counterpart language. Pairs involving an
// empty vector are dropped. Output is sorted by (doc_a, doc_b). Throws
// UnknownDocumentError for ids missing from `index` or `docs`.
std::vector<BilingualPair> filter_pairs(std::span<const Candidate> candidates,
                                        const TfIdfIndex& index,
                                        const corpus::DocumentIndex& docs,
                                        const PairingConfig& cfg,
                                        const EmbeddingScorer* scorer = nullptr,
                                        unsigned jobs = 1);

std::string to_jsonl(const BilingualPair& pair);
BilingualPair pair_from_json(std::string_view line, std::size_t line_no);

}  // namespace trimine::pairing
