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

// Reference implementations and generators shared by the unit and
// acceptance suites. Everything here is written against the contracts, not
// the library internals, so it can serve as an oracle.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "trimine/corpus.h"
#include "trimine/linking.h"
#include "trimine/metrics.h"
#include "trimine/pairing.h"
#include "trimine/pivot.h"
#include "trimine/rng.h"

namespace trimine::testing {

inline std::string strip_spaces(const std::string& s) {
  std::string out;
  for (const char c : s) {
    if (c != ' ') out.push_back(c);
  }
  return out;
}

//===----------------------------------------------------------------------===//
// Random corpora for the pairing oracle
//===----------------------------------------------------------------------===//

struct RandomCorpus {
  std::vector<corpus::Document> docs;
  std::vector<pivot::PivotText> pivots;
};

// Documents over a small vocabulary so similarities spread across [0, 1];
// a few exact duplicates create similarity ties and a few empty texts
// exercise the empty-vector path.
inline RandomCorpus random_corpus(Rng& rng, std::size_t n) {
  static const std::vector<std::string> langs = {"en", "de", "fr", "zh"};
  RandomCorpus out;
  const std::size_t vocab = 8 + rng.uniform_below(30);
  for (std::size_t i = 0; i < n; ++i) {
    corpus::Document d;
    d.id = "d" + std::to_string(rng.uniform_below(1000000)) + "_" + std::to_string(i);
    d.lang = langs[rng.uniform_below(langs.size())];
    d.url = "https://example.com/" + std::to_string(i);
    d.timestamp = static_cast<std::int64_t>(rng.uniform_below(60 * 86400));
    pivot::PivotText p{d.id, {}};
    if (!out.pivots.empty() && rng.uniform_below(10) == 0) {
      p.tokens = out.pivots[rng.uniform_below(out.pivots.size())].tokens;
    } else if (rng.uniform_below(25) != 0) {
      const std::size_t len = 1 + rng.uniform_below(12);
      for (std::size_t k = 0; k < len; ++k) {
        p.tokens.push_back("t" + std::to_string(rng.uniform_below(vocab)));
      }
    }
    for (const auto& t : p.tokens) d.raw_text += t + ". ";
    d.sentences = corpus::segment_sentences(d.raw_text, d.lang);
    out.docs.push_back(std::move(d));
    out.pivots.push_back(std::move(p));
  }
  return out;
}

//===----------------------------------------------------------------------===//
// tf-idf, recomputed from the formula with ordered maps
//===----------------------------------------------------------------------===//

inline std::map<std::string, std::map<std::string, double>> naive_tfidf(
    const std::vector<pivot::PivotText>& pivots) {
  const double n = static_cast<double>(pivots.size());
  std::map<std::string, int> df;
  for (const auto& p : pivots) {
    for (const auto& t : std::set<std::string>(p.tokens.begin(), p.tokens.end())) ++df[t];
  }
  std::map<std::string, std::map<std::string, double>> out;
  for (const auto& p : pivots) {
    std::map<std::string, double> v;
    for (const auto& t : p.tokens) v[t] += 1.0;
    double norm = 0.0;
    for (auto& [t, w] : v) {
      w *= std::log((1.0 + n) / (1.0 + df[t])) + 1.0;
      norm += w * w;
    }
    for (auto& [t, w] : v) w /= std::sqrt(norm);
    out[p.doc_id] = v;
  }
  return out;
}

inline double naive_cosine(const std::map<std::string, double>& a,
                           const std::map<std::string, double>& b) {
  double dot = 0.0;
  for (const auto& [t, w] : a) {
    const auto it = b.find(t);
    if (it != b.end()) dot += w * it->second;
  }
  return dot;
}

//===----------------------------------------------------------------------===//
// Pairing: O(n^2) reference
//===----------------------------------------------------------------------===//

// Scans every document pair, applies the window, language, threshold and
// one-best-per-counterpart-language rules directly.
inline std::vector<pairing::BilingualPair> brute_force_pairs(
    const std::vector<corpus::Document>& docs, const pairing::TfIdfIndex& index,
    const pairing::PairingConfig& cfg) {
  struct Scored {
    double sim;
    std::string a, b, lang_a, lang_b;
  };
  std::vector<Scored> kept;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    for (std::size_t j = 0; j < docs.size(); ++j) {
      if (i == j) continue;
      const auto& x = docs[i];
      const auto& y = docs[j];
      if (!(x.id < y.id)) continue;
      if (x.lang == y.lang) continue;
      const std::int64_t gap = x.timestamp > y.timestamp ? x.timestamp - y.timestamp
                                                         : y.timestamp - x.timestamp;
      if (gap > cfg.window_seconds) continue;
      const auto& vx = index.at(x.id);
      const auto& vy = index.at(y.id);
      if (vx.empty() || vy.empty()) continue;
      const double sim = pairing::score_pair(vx, vy);
      if (sim < cfg.tfidf_threshold) continue;
      kept.push_back({sim, x.id, y.id, x.lang, y.lang});
    }
  }
  std::sort(kept.begin(), kept.end(), [](const Scored& p, const Scored& q) {
    if (p.sim != q.sim) return p.sim > q.sim;
    return std::tie(p.a, p.b) < std::tie(q.a, q.b);
  });
  std::set<std::pair<std::string, std::string>> taken;
  std::vector<pairing::BilingualPair> out;
  for (const auto& s : kept) {
    if (taken.count({s.a, s.lang_b}) || taken.count({s.b, s.lang_a})) continue;
    taken.insert({s.a, s.lang_b});
    taken.insert({s.b, s.lang_a});
    out.push_back({s.a, s.b, s.sim, std::nullopt});
  }
  std::sort(out.begin(), out.end(), [](const auto& p, const auto& q) {
    return std::tie(p.doc_a, p.doc_b) < std::tie(q.doc_a, q.doc_b);
  });
  return out;
}

//===----------------------------------------------------------------------===//
// Linking: nested-loop join
//===----------------------------------------------------------------------===//

inline std::vector<linking::TrilingualTriple> brute_force_link(
    const std::vector<pairing::BilingualPair>& pairs, const corpus::DocumentIndex& docs) {
  std::map<std::array<std::string, 3>, std::array<std::string, 2>> found;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (std::size_t j = 0; j < pairs.size(); ++j) {
      if (i == j) continue;
      const std::array<std::string, 2> pi{pairs[i].doc_a, pairs[i].doc_b};
      const std::array<std::string, 2> pj{pairs[j].doc_a, pairs[j].doc_b};
      for (int si = 0; si < 2; ++si) {
        for (int sj = 0; sj < 2; ++sj) {
          const auto& b1 = docs.at(pi[si]);
          const auto& b2 = docs.at(pj[sj]);
          if (b1.lang != b2.lang) continue;
          if (linking::normalize_url(b1.url) != linking::normalize_url(b2.url)) continue;
          const auto& shared = docs.at(std::min(b1.id, b2.id));
          const auto& a = docs.at(pi[1 - si]);
          const auto& c = docs.at(pj[1 - sj]);
          if (a.lang == shared.lang || c.lang == shared.lang || a.lang == c.lang) continue;
          std::array<std::string, 3> ids{a.id, shared.id, c.id};
          std::sort(ids.begin(), ids.end());
          std::array<std::string, 2> refs{pairs[i].ref(), pairs[j].ref()};
          std::sort(refs.begin(), refs.end());
          auto it = found.find(ids);
          if (it == found.end()) {
            found.emplace(ids, refs);
          } else if (refs < it->second) {
            it->second = refs;
          }
        }
      }
    }
  }
  std::vector<linking::TrilingualTriple> out;
  for (const auto& [ids, refs] : found) {
    linking::TrilingualTriple t;
    t.ids = ids;
    for (int k = 0; k < 3; ++k) t.langs[k] = docs.at(ids[k]).lang;
    t.pair_refs = refs;
    out.push_back(t);
  }
  return out;
}

// Random linkable pairs: documents grouped in "stories" that share URLs
// across crawled copies, with random cross-language pair edges.
struct RandomLinkInput {
  std::vector<corpus::Document> docs;
  std::vector<pairing::BilingualPair> pairs;
};

inline RandomLinkInput random_link_input(Rng& rng, std::size_t max_pairs) {
  static const std::vector<std::string> langs = {"en", "de", "fr", "zh", "ja"};
  RandomLinkInput out;
  const std::size_t n_docs = 6 + rng.uniform_below(120);
  const std::size_t n_urls = 1 + n_docs / (1 + rng.uniform_below(4));
  for (std::size_t i = 0; i < n_docs; ++i) {
    corpus::Document d;
    d.id = "doc" + std::to_string(i);
    d.lang = langs[rng.uniform_below(langs.size())];
    std::string url = "https://site.example/" + std::to_string(rng.uniform_below(n_urls));
    switch (rng.uniform_below(4)) {
      case 0:
        url += "/";
        break;
      case 1:
        url += "#frag";
        break;
      case 2:
        url.replace(0, 12, "HTTPS://Site");
        break;
      default:
        break;
    }
    d.url = url;
    out.docs.push_back(std::move(d));
  }
  std::set<std::pair<std::string, std::string>> seen;
  const std::size_t n_pairs = rng.uniform_below(max_pairs + 1);
  for (std::size_t k = 0; k < n_pairs * 3 && out.pairs.size() < n_pairs; ++k) {
    const auto& x = out.docs[rng.uniform_below(n_docs)];
    const auto& y = out.docs[rng.uniform_below(n_docs)];
    if (x.lang == y.lang) continue;
    auto key = std::minmax(x.id, y.id);
    if (!seen.insert({key.first, key.second}).second) continue;
    out.pairs.push_back({key.first, key.second, rng.uniform01(), std::nullopt});
  }
  return out;
}

//===----------------------------------------------------------------------===//
// BLEU: independent n-gram counter
//===----------------------------------------------------------------------===//

struct NaiveBleu {
  double score;
  std::vector<double> precisions;
  double bp;
};

inline NaiveBleu naive_bleu(const std::vector<std::pair<std::vector<std::string>,
                                                        std::vector<std::string>>>& docs,
                            int max_n = 4) {
  std::vector<double> match(max_n, 0.0);
  std::vector<double> total(max_n, 0.0);
  double hyp_len = 0.0;
  double ref_len = 0.0;
  for (const auto& [hyp, ref] : docs) {
    hyp_len += static_cast<double>(hyp.size());
    ref_len += static_cast<double>(ref.size());
    for (int n = 1; n <= max_n; ++n) {
      std::map<std::string, int> h;
      std::map<std::string, int> r;
      auto grams = [n](const std::vector<std::string>& toks, std::map<std::string, int>& m) {
        for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= toks.size(); ++i) {
          std::string key;
          for (int k = 0; k < n; ++k) key += toks[i + static_cast<std::size_t>(k)] + '\x1f';
          ++m[key];
        }
      };
      grams(hyp, h);
      grams(ref, r);
      for (const auto& [g, c] : h) {
        total[n - 1] += c;
        match[n - 1] += std::min(c, r.count(g) ? r.at(g) : 0);
      }
    }
  }
  NaiveBleu out{0.0, {}, 1.0};
  double log_sum = 0.0;
  bool zero = false;
  for (int n = 0; n < max_n; ++n) {
    const double p = total[n] > 0 ? match[n] / total[n] : 0.0;
    out.precisions.push_back(p);
    if (p == 0.0) zero = true; else log_sum += std::log(p);
  }
  out.bp = hyp_len == 0 ? 0.0 : (hyp_len < ref_len ? std::exp(1.0 - ref_len / hyp_len) : 1.0);
  if (!zero) out.score = 100.0 * out.bp * std::exp(log_sum / max_n);
  return out;
}

}  // namespace trimine::testing
