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

#include "trimine/pairing.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <tuple>
#include <unordered_set>

#include "json.hpp"

#include "trimine/error.h"
#include "trimine/parallel.h"

namespace trimine::pairing {

namespace {

using TermCounts = std::vector<std::pair<std::string_view, std::uint32_t>>;

TermCounts count_terms(const pivot::PivotText& pivot) {
  std::vector<std::string_view> sorted(pivot.tokens.begin(), pivot.tokens.end());
  std::sort(sorted.begin(), sorted.end());
  TermCounts counts;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    counts.emplace_back(sorted[i], static_cast<std::uint32_t>(j - i));
    i = j;
  }
  return counts;
}

std::int64_t saturating_add(std::int64_t a, std::int64_t b) {
  if (b > 0 && a > std::numeric_limits<std::int64_t>::max() - b) {
    return std::numeric_limits<std::int64_t>::max();
  }
  return a + b;
}

struct Scored {
  double similarity = 0.0;
  std::optional<double> embed;
  bool kept = false;
};

}  // namespace

const TfIdfVector* TfIdfIndex::find(std::string_view doc_id) const {
  const auto it = position_.find(doc_id);
  return it == position_.end() ? nullptr : &vectors_[it->second];
}

const TfIdfVector& TfIdfIndex::at(std::string_view doc_id) const {
  const TfIdfVector* v = find(doc_id);
  if (v == nullptr) throw UnknownDocumentError(std::string(doc_id));
  return *v;
}

TfIdfIndex build_tfidf_index(std::span<const pivot::PivotText> pivots,
                             unsigned jobs) {
  TfIdfIndex index;
  const std::size_t n = pivots.size();

  std::vector<TermCounts> counts(n);
  parallel_for(n, jobs, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) counts[i] = count_terms(pivots[i]);
  });

  std::unordered_map<std::string_view, std::uint32_t> df;
  for (const auto& doc : counts) {
    for (const auto& [term, tf] : doc) ++df[term];
  }

  index.vocabulary_.reserve(df.size());
  for (const auto& [term, _] : df) index.vocabulary_.emplace_back(term);
  std::sort(index.vocabulary_.begin(), index.vocabulary_.end());

  std::unordered_map<std::string_view, TermId> term_ids;
  term_ids.reserve(index.vocabulary_.size());
  index.idf_.resize(index.vocabulary_.size());
  const double total = static_cast<double>(n);
  for (std::size_t t = 0; t < index.vocabulary_.size(); ++t) {
    const std::string_view term = index.vocabulary_[t];
    term_ids.emplace(term, static_cast<TermId>(t));
    index.idf_[t] =
        std::log((1.0 + total) / (1.0 + static_cast<double>(df.at(term)))) + 1.0;
  }

  index.vectors_.resize(n);
  parallel_for(n, jobs, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      TfIdfVector& v = index.vectors_[i];
      v.doc_id = pivots[i].doc_id;
      v.weights.reserve(counts[i].size());
      for (const auto& [term, tf] : counts[i]) {
        const TermId id = term_ids.at(term);
        v.weights.emplace_back(id, static_cast<double>(tf) * index.idf_[id]);
      }
      std::sort(v.weights.begin(), v.weights.end());
      double norm_sq = 0.0;
      for (const auto& [_, w] : v.weights) norm_sq += w * w;
      const double norm = std::sqrt(norm_sq);
      for (auto& [_, w] : v.weights) w /= norm;
    }
  });

  index.position_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!index.position_.emplace(index.vectors_[i].doc_id, i).second) {
      throw DuplicateIdError(index.vectors_[i].doc_id);
    }
  }
  return index;
}

double score_pair(const TfIdfVector& a, const TfIdfVector& b) {
  double dot = 0.0;
  auto ia = a.weights.begin();
  auto ib = b.weights.begin();
  while (ia != a.weights.end() && ib != b.weights.end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      dot += ia->second * ib->second;
      ++ia;
      ++ib;
    }
  }
  return std::clamp(dot, 0.0, 1.0);
}

std::vector<std::string> validate(const PairingConfig& cfg) {
  std::vector<std::string> violations;
  if (cfg.window_seconds <= 0) {
    violations.emplace_back("window-seconds: must be > 0, got " +
                            std::to_string(cfg.window_seconds));
  }
  if (!(cfg.tfidf_threshold >= 0.0 && cfg.tfidf_threshold <= 1.0)) {
    violations.emplace_back("tfidf-threshold: must be in [0, 1], got " +
                            std::to_string(cfg.tfidf_threshold));
  }
  if (cfg.embed_threshold &&
      !(*cfg.embed_threshold >= 0.0 && *cfg.embed_threshold <= 1.0)) {
    violations.emplace_back("embed-threshold: must be in [0, 1], got " +
                            std::to_string(*cfg.embed_threshold));
  }
  return violations;
}

std::vector<Candidate> candidate_pairs(std::span<const corpus::Document> docs,
                                       const PairingConfig& cfg) {
  std::vector<const corpus::Document*> order;
  order.reserve(docs.size());
  for (const auto& d : docs) order.push_back(&d);
  std::sort(order.begin(), order.end(), [](const auto* x, const auto* y) {
    return std::tie(x->timestamp, x->id) < std::tie(y->timestamp, y->id);
  });

  std::vector<Candidate> out;
  if (cfg.window_seconds < 0) return out;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const corpus::Document& left = *order[i];
    const std::int64_t horizon = saturating_add(left.timestamp, cfg.window_seconds);
    for (std::size_t j = i + 1; j < order.size() && order[j]->timestamp <= horizon;
         ++j) {
      const corpus::Document& right = *order[j];
      if (left.lang == right.lang) continue;
      if (left.id < right.id) {
        out.push_back({left.id, right.id});
      } else {
        out.push_back({right.id, left.id});
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

JaccardScorer::JaccardScorer(std::span<const pivot::PivotText> pivots) {
  token_sets_.reserve(pivots.size());
  for (const auto& p : pivots) {
    std::vector<std::string> set(p.tokens);
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    token_sets_.emplace(p.doc_id, std::move(set));
  }
}

double JaccardScorer::score(const corpus::Document& a,
                            const corpus::Document& b) const {
  const auto ia = token_sets_.find(a.id);
  if (ia == token_sets_.end()) throw UnknownDocumentError(a.id);
  const auto ib = token_sets_.find(b.id);
  if (ib == token_sets_.end()) throw UnknownDocumentError(b.id);
  const auto& x = ia->second;
  const auto& y = ib->second;
  if (x.empty() && y.empty()) return 0.0;
  std::size_t common = 0;
  for (auto p = x.begin(), q = y.begin(); p != x.end() && q != y.end();) {
    if (*p < *q) {
      ++p;
    } else if (*q < *p) {
      ++q;
    } else {
      ++common;
      ++p;
      ++q;
    }
  }
  return static_cast<double>(common) /
         static_cast<double>(x.size() + y.size() - common);
}

std::vector<BilingualPair> filter_pairs(std::span<const Candidate> candidates,
                                        const TfIdfIndex& index,
                                        const corpus::DocumentIndex& docs,
                                        const PairingConfig& cfg,
                                        const EmbeddingScorer* scorer,
                                        unsigned jobs) {
  const bool use_embed = scorer != nullptr && cfg.embed_threshold.has_value();
  std::vector<Scored> scored(candidates.size());
  parallel_for(candidates.size(), jobs, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const Candidate& c = candidates[i];
      const TfIdfVector& va = index.at(c.a);
      const TfIdfVector& vb = index.at(c.b);
      const corpus::Document& da = docs.at(c.a);
      const corpus::Document& db = docs.at(c.b);
      if (va.empty() || vb.empty() || da.lang == db.lang) continue;
      Scored& s = scored[i];
      s.similarity = score_pair(va, vb);
      if (s.similarity < cfg.tfidf_threshold) continue;
      if (use_embed) {
        s.embed = scorer->score(da, db);
        if (*s.embed < *cfg.embed_threshold) continue;
      }
      s.kept = true;
    }
  });

  std::vector<std::size_t> ranked;
  for (std::size_t i = 0; i < scored.size(); ++i) {
    if (scored[i].kept) ranked.push_back(i);
  }
  std::sort(ranked.begin(), ranked.end(), [&](std::size_t x, std::size_t y) {
    if (scored[x].similarity != scored[y].similarity) {
      return scored[x].similarity > scored[y].similarity;
    }
    return candidates[x] < candidates[y];
  });

  // (document, counterpart language) slots already taken.
  std::unordered_set<std::string> taken;
  auto slot = [](std::string_view id, std::string_view lang) {
    std::string key(id);
    key.push_back('\t');
    key.append(lang);
    return key;
  };
  std::vector<BilingualPair> out;
  for (const std::size_t i : ranked) {
    const Candidate& c = candidates[i];
    const corpus::Document& da = docs.at(c.a);
    const corpus::Document& db = docs.at(c.b);
    std::string slot_a = slot(c.a, db.lang);
    std::string slot_b = slot(c.b, da.lang);
    if (taken.contains(slot_a) || taken.contains(slot_b)) continue;
    taken.insert(std::move(slot_a));
    taken.insert(std::move(slot_b));
    out.push_back({std::string(c.a), std::string(c.b), scored[i].similarity,
                   scored[i].embed});
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    return std::tie(x.doc_a, x.doc_b) < std::tie(y.doc_a, y.doc_b);
  });
  return out;
}

std::string to_jsonl(const BilingualPair& pair) {
  nlohmann::ordered_json obj;
  obj["a"] = pair.doc_a;
  obj["b"] = pair.doc_b;
  obj["similarity"] = pair.similarity;
  if (pair.embed_score) obj["embed_score"] = *pair.embed_score;
  return obj.dump();
}

BilingualPair pair_from_json(std::string_view line, std::size_t line_no) {
  try {
    const auto obj = nlohmann::json::parse(line);
    BilingualPair pair;
    pair.doc_a = obj.at("a").get<std::string>();
    pair.doc_b = obj.at("b").get<std::string>();
    pair.similarity = obj.at("similarity").get<double>();
    if (const auto it = obj.find("embed_score"); it != obj.end()) {
      pair.embed_score = it->get<double>();
    }
    if (pair.doc_a == pair.doc_b) {
      throw RecordError(line_no, "pair references the same document twice");
    }
    if (pair.doc_b < pair.doc_a) std::swap(pair.doc_a, pair.doc_b);
    return pair;
  } catch (const nlohmann::json::exception& e) {
    throw RecordError(line_no, std::string("invalid pair record: ") + e.what());
  }
}

}  // namespace trimine::pairing
