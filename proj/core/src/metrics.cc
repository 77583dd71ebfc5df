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

#include "trimine/metrics.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_map>

#include "json.hpp"

#include "trimine/error.h"
#include "trimine/utf8.h"

namespace trimine::metrics {

namespace {

// Dense ids for the n-grams of one (hypothesis, reference) pair. Order-n ids
// extend order-(n-1) ids by one token, so each order costs one hash lookup
// per position.
class NgramIds {
 public:
  std::vector<std::uint32_t> tokens(std::span<const std::string> toks) {
    std::vector<std::uint32_t> ids;
    ids.reserve(toks.size());
    for (const auto& t : toks) {
      ids.push_back(vocab_.try_emplace(t, static_cast<std::uint32_t>(vocab_.size()))
                        .first->second);
    }
    return ids;
  }

  // prev[i] is the id of the order-(n-1) gram starting at i; returns the ids
  // of the order-n grams.
  std::vector<std::uint32_t> extend(const std::vector<std::uint32_t>& prev,
                                    const std::vector<std::uint32_t>& toks, std::size_t n) {
    std::vector<std::uint32_t> out;
    if (toks.size() < n) return out;
    out.reserve(toks.size() - n + 1);
    for (std::size_t i = 0; i + n <= toks.size(); ++i) {
      const std::uint64_t key = (std::uint64_t{prev[i]} << 32) | toks[i + n - 1];
      out.push_back(grams_.try_emplace(key, next_).first->second);
      if (out.back() == next_) ++next_;
    }
    return out;
  }

  std::size_t vocabulary() const { return vocab_.size(); }
  std::size_t grams() const { return next_; }
  void reset_grams() {
    grams_.clear();
    next_ = 0;
  }

 private:
  std::unordered_map<std::string_view, std::uint32_t> vocab_;
  std::unordered_map<std::uint64_t, std::uint32_t> grams_;
  std::uint32_t next_ = 0;
};

// Clipped matches: each hypothesis gram consumes one reference occurrence.
std::size_t clipped_matches(const std::vector<std::uint32_t>& hyp,
                            const std::vector<std::uint32_t>& ref, std::size_t ids) {
  std::vector<std::uint32_t> available(ids, 0);
  for (const auto id : ref) ++available[id];
  std::size_t matches = 0;
  for (const auto id : hyp) {
    if (available[id] > 0) {
      --available[id];
      ++matches;
    }
  }
  return matches;
}

}  // namespace

std::vector<std::string> bleu_tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string run;
  auto flush = [&] {
    if (!run.empty()) tokens.push_back(std::move(run));
    run.clear();
  };
  for (const auto& cp : utf8::codepoints(text)) {
    if (utf8::is_space(cp.value)) {
      flush();
    } else if (utf8::is_punct(cp.value) || utf8::is_cjk(cp.value)) {
      flush();
      tokens.emplace_back(text.substr(cp.offset, cp.length));
    } else {
      run.append(text.substr(cp.offset, cp.length));
    }
  }
  flush();
  return tokens;
}

BleuStats& BleuStats::operator+=(const BleuStats& other) {
  for (std::size_t i = 0; i < matches.size() && i < other.matches.size(); ++i) {
    matches[i] += other.matches[i];
    totals[i] += other.totals[i];
  }
  hyp_length += other.hyp_length;
  ref_length += other.ref_length;
  return *this;
}

BleuStats document_stats(std::span<const std::string> hyp,
                         std::span<const std::string> ref, std::size_t max_n) {
  BleuStats stats(max_n);
  stats.hyp_length = hyp.size();
  stats.ref_length = ref.size();
  NgramIds ids;
  const auto hyp_tokens = ids.tokens(hyp);
  const auto ref_tokens = ids.tokens(ref);
  std::vector<std::uint32_t> h = hyp_tokens;
  std::vector<std::uint32_t> r = ref_tokens;
  std::size_t id_count = ids.vocabulary();
  for (std::size_t n = 1; n <= max_n; ++n) {
    if (n > 1) {
      ids.reset_grams();
      h = ids.extend(h, hyp_tokens, n);
      r = ids.extend(r, ref_tokens, n);
      id_count = ids.grams();
    }
    if (h.empty()) break;
    stats.totals[n - 1] = h.size();
    stats.matches[n - 1] = clipped_matches(h, r, id_count);
  }
  return stats;
}

BleuReport bleu_from_stats(const BleuStats& stats) {
  BleuReport report;
  report.hyp_length = stats.hyp_length;
  report.ref_length = stats.ref_length;
  bool any_zero = false;
  double log_sum = 0.0;
  for (std::size_t i = 0; i < stats.matches.size(); ++i) {
    const double p = stats.totals[i] == 0
                         ? 0.0
                         : static_cast<double>(stats.matches[i]) /
                               static_cast<double>(stats.totals[i]);
    report.precisions.push_back(p);
    if (p <= 0.0) {
      any_zero = true;
    } else {
      log_sum += std::log(p);
    }
  }
  if (stats.hyp_length == 0) {
    report.brevity_penalty = 0.0;
  } else if (stats.hyp_length < stats.ref_length) {
    report.brevity_penalty =
        std::exp(1.0 - static_cast<double>(stats.ref_length) /
                           static_cast<double>(stats.hyp_length));
  } else {
    report.brevity_penalty = 1.0;
  }
  if (!any_zero && !report.precisions.empty()) {
    report.score = 100.0 * report.brevity_penalty *
                   std::exp(log_sum / static_cast<double>(report.precisions.size()));
  }
  return report;
}

BleuReport d_bleu(std::span<const DocPair> pairs, std::size_t max_n) {
  if (pairs.empty()) throw Error("d-BLEU needs at least one document pair");
  if (max_n == 0) throw Error("d-BLEU max n-gram order must be >= 1");
  BleuStats total(max_n);
  for (const auto& pair : pairs) {
    const auto ref = bleu_tokenize(pair.reference);
    if (ref.empty()) throw Error("d-BLEU reference document is empty");
    total += document_stats(bleu_tokenize(pair.hypothesis), ref, max_n);
  }
  return bleu_from_stats(total);
}

std::string to_json(const BleuReport& report) {
  nlohmann::ordered_json obj;
  obj["score"] = report.score;
  obj["precisions"] = report.precisions;
  obj["brevity_penalty"] = report.brevity_penalty;
  obj["hyp_length"] = report.hyp_length;
  obj["ref_length"] = report.ref_length;
  return obj.dump();
}

}  // namespace trimine::metrics
