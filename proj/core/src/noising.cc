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

#include "trimine/noising.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "json.hpp"

#include "trimine/utf8.h"

namespace trimine::noising {

namespace {

constexpr std::string_view kSlot = "{k}";
constexpr int kPlacementAttempts = 1000;

std::size_t head_size(std::size_t n, double fraction) {
  const auto h = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(n)));
  return std::min(h, n);
}

std::size_t draw_span_length(double mean, std::size_t remaining, Rng& rng) {
  if (mean <= 1.0) return 1;
  // Geometric on {1, 2, ...} with success probability 1 / mean.
  const double u = rng.uniform01();
  const double len = 1.0 + std::floor(std::log1p(-u) / std::log1p(-1.0 / mean));
  if (!(len < static_cast<double>(remaining))) return remaining;
  return static_cast<std::size_t>(len);
}

bool range_free(const std::vector<bool>& masked, std::size_t start, std::size_t len) {
  for (std::size_t i = start; i < start + len; ++i) {
    if (masked[i]) return false;
  }
  return true;
}

void place_span(std::vector<bool>& masked, std::size_t len, Rng& rng) {
  const std::size_t n = masked.size();
  for (int attempt = 0; attempt < kPlacementAttempts; ++attempt) {
    const auto start = static_cast<std::size_t>(rng.uniform_below(n - len + 1));
    if (range_free(masked, start, len)) {
      std::fill_n(masked.begin() + static_cast<std::ptrdiff_t>(start), len, true);
      return;
    }
  }
  // Leftmost free run that fits.
  std::size_t run = 0;
  for (std::size_t i = 0; i < n; ++i) {
    run = masked[i] ? 0 : run + 1;
    if (run == len) {
      std::fill_n(masked.begin() + static_cast<std::ptrdiff_t>(i + 1 - len), len, true);
      return;
    }
  }
  // Fragmented: take the leftmost free cells so the budget stays exact.
  for (std::size_t i = 0; i < n && len > 0; ++i) {
    if (!masked[i]) {
      masked[i] = true;
      --len;
    }
  }
}

std::vector<std::string> truncated(std::vector<std::string> tokens, std::size_t max) {
  if (tokens.size() > max) tokens.resize(max);
  return tokens;
}

}  // namespace

std::vector<std::string> validate(const NoiseConfig& cfg) {
  std::vector<std::string> violations;
  if (!(cfg.split_fraction > 0.0 && cfg.split_fraction < 1.0)) {
    violations.emplace_back("split-fraction: must be in (0, 1), got " +
                            std::to_string(cfg.split_fraction));
  }
  if (!(cfg.corruption_ratio >= 0.0 && cfg.corruption_ratio <= 1.0)) {
    violations.emplace_back("corruption-ratio: must be in [0, 1], got " +
                            std::to_string(cfg.corruption_ratio));
  }
  if (!(cfg.mean_span_length >= 1.0) || !std::isfinite(cfg.mean_span_length)) {
    violations.emplace_back("mean-span-length: must be a finite value >= 1, got " +
                            std::to_string(cfg.mean_span_length));
  }
  const std::string& tmpl = cfg.mask_token_template;
  const std::size_t slot = tmpl.find(kSlot);
  if (slot == std::string::npos || tmpl.find(kSlot, slot + 1) != std::string::npos) {
    violations.emplace_back("mask-template: must contain exactly one {k}, got '" +
                            tmpl + "'");
  }
  if (cfg.max_source_tokens == 0) {
    violations.emplace_back("max-source-tokens: must be >= 1");
  }
  return violations;
}

std::vector<std::string> DefaultTokenizer::tokenize(std::string_view text) const {
  std::vector<std::string> tokens;
  for (const auto& word : utf8::split_whitespace(text)) {
    const std::size_t word_start = tokens.size();
    std::string run;
    auto flush = [&] {
      if (!run.empty()) tokens.push_back(std::move(run));
      run.clear();
    };
    for (const auto& cp : utf8::codepoints(word)) {
      const std::string_view piece(word.data() + cp.offset, cp.length);
      if (utf8::is_punct(cp.value) || utf8::is_cjk(cp.value)) {
        flush();
        tokens.emplace_back(piece);
      } else {
        run.append(piece);
      }
    }
    flush();
    if (tokens.size() > word_start) tokens[word_start].insert(0, kWordMarker);
  }
  return tokens;
}

std::string DefaultTokenizer::detokenize(std::span<const std::string> tokens) {
  std::string out;
  for (const auto& token : tokens) {
    if (token.starts_with(kWordMarker)) {
      if (!out.empty()) out.push_back(' ');
      out.append(token, kWordMarker.size());
    } else {
      out.append(token);
    }
  }
  return out;
}

std::vector<std::string> tokenize_sentences(std::span<const std::string> sentences,
                                            const Tokenizer& tokenizer) {
  std::vector<std::string> tokens;
  for (const auto& s : sentences) {
    auto part = tokenizer.tokenize(s);
    tokens.insert(tokens.end(), std::make_move_iterator(part.begin()),
                  std::make_move_iterator(part.end()));
  }
  return tokens;
}

std::optional<Halves> split_half(const corpus::Document& doc, double fraction) {
  const std::size_t n = doc.sentences.size();
  if (n < 2) return std::nullopt;
  const auto cut = static_cast<std::ptrdiff_t>(head_size(n, fraction));
  Halves halves;
  halves.head.assign(doc.sentences.begin(), doc.sentences.begin() + cut);
  halves.tail.assign(doc.sentences.begin() + cut, doc.sentences.end());
  return halves;
}

std::optional<std::vector<std::string>> graft_ordered(const corpus::Document& first,
                                                      const corpus::Document& second,
                                                      double fraction) {
  auto head = split_half(first, fraction);
  auto tail = split_half(second, fraction);
  if (!head || !tail) return std::nullopt;
  std::vector<std::string> out = std::move(head->head);
  out.insert(out.end(), std::make_move_iterator(tail->tail.begin()),
             std::make_move_iterator(tail->tail.end()));
  return out;
}

std::optional<std::vector<std::string>> graft(const corpus::Document& a,
                                              const corpus::Document& b,
                                              double fraction, Rng& rng) {
  const bool heads = rng.coin();
  return heads ? graft_ordered(a, b, fraction) : graft_ordered(b, a, fraction);
}

std::string mask_token(std::string_view tmpl, std::size_t k) {
  std::string out(tmpl);
  const std::size_t slot = out.find(kSlot);
  if (slot != std::string::npos) out.replace(slot, kSlot.size(), std::to_string(k));
  return out;
}

bool is_mask_token(std::string_view token, std::string_view tmpl) {
  const std::size_t slot = tmpl.find(kSlot);
  if (slot == std::string_view::npos) return token == tmpl;
  const std::string_view prefix = tmpl.substr(0, slot);
  const std::string_view suffix = tmpl.substr(slot + kSlot.size());
  if (token.size() <= prefix.size() + suffix.size()) return false;
  if (!token.starts_with(prefix) || !token.ends_with(suffix)) return false;
  const std::string_view digits =
      token.substr(prefix.size(), token.size() - prefix.size() - suffix.size());
  return std::all_of(digits.begin(), digits.end(),
                     [](char c) { return c >= '0' && c <= '9'; });
}

std::vector<std::string> corrupt_spans(std::span<const std::string> tokens,
                                       double ratio, double mean_span_length,
                                       std::string_view mask_template, Rng& rng) {
  const std::size_t n = tokens.size();
  const double wanted = std::round(std::clamp(ratio, 0.0, 1.0) * static_cast<double>(n));
  const auto budget = std::min(n, static_cast<std::size_t>(wanted));
  if (budget == 0) return {tokens.begin(), tokens.end()};

  std::vector<std::size_t> spans;
  for (std::size_t remaining = budget; remaining > 0;) {
    const std::size_t len = draw_span_length(mean_span_length, remaining, rng);
    spans.push_back(len);
    remaining -= len;
  }
  std::vector<bool> masked(n, false);
  for (const std::size_t len : spans) place_span(masked, len, rng);

  std::vector<std::string> out;
  out.reserve(n - budget + spans.size());
  std::size_t next_mask = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!masked[i]) {
      out.push_back(tokens[i]);
    } else if (i == 0 || !masked[i - 1]) {
      out.push_back(mask_token(mask_template, next_mask++));
    }
  }
  return out;
}

std::optional<std::vector<std::string>> apply_noise(const corpus::Document& a,
                                                    const corpus::Document& b,
                                                    const NoiseConfig& cfg,
                                                    const Tokenizer& tokenizer,
                                                    Rng& rng) {
  auto grafted = graft(a, b, cfg.split_fraction, rng);
  if (!grafted) return std::nullopt;
  const auto permuted = permute_sentences(std::move(*grafted), rng);
  const auto tokens = tokenize_sentences(permuted, tokenizer);
  return corrupt_spans(tokens, cfg.corruption_ratio, cfg.mean_span_length,
                       cfg.mask_token_template, rng);
}

std::string language_tag(std::string_view lang) {
  std::string tag = "<2";
  tag.append(lang);
  tag.push_back('>');
  return tag;
}

std::vector<PretrainExample> make_examples(const linking::TrilingualTriple& triple,
                                           const corpus::DocumentIndex& docs,
                                           const NoiseConfig& cfg,
                                           const Tokenizer& tokenizer,
                                           const Rng& root,
                                           ExampleStats* stats) {
  const std::array<const corpus::Document*, 3> members{
      &docs.at(triple.ids[0]), &docs.at(triple.ids[1]), &docs.at(triple.ids[2])};
  const std::string triple_id = triple.id();

  std::vector<PretrainExample> out;
  for (std::size_t t = 0; t < 3; ++t) {
    const corpus::Document& target = *members[t];
    const corpus::Document& first = *members[t == 0 ? 1 : 0];
    const corpus::Document& second = *members[t == 2 ? 1 : 2];

    Rng rng = root.fork(triple_id + "/" + target.lang);
    auto noised = apply_noise(first, second, cfg, tokenizer, rng);
    if (!noised) {
      if (stats != nullptr) ++stats->skipped;
      continue;
    }
    PretrainExample ex;
    ex.triple_id = triple_id;
    ex.tgt_lang = target.lang;
    ex.src_langs = {first.lang, second.lang};
    ex.source.reserve(std::min(noised->size(), cfg.max_source_tokens) + 1);
    ex.source.push_back(language_tag(target.lang));
    const std::size_t keep = std::min(noised->size(), cfg.max_source_tokens);
    ex.source.insert(ex.source.end(), std::make_move_iterator(noised->begin()),
                     std::make_move_iterator(noised->begin() +
                                             static_cast<std::ptrdiff_t>(keep)));
    ex.target = truncated(tokenize_sentences(target.sentences, tokenizer),
                          cfg.max_source_tokens);
    out.push_back(std::move(ex));
    if (stats != nullptr) ++stats->emitted;
  }
  return out;
}

std::string to_jsonl(const PretrainExample& example) {
  nlohmann::ordered_json obj;
  obj["triple_id"] = example.triple_id;
  obj["tgt_lang"] = example.tgt_lang;
  obj["src_langs"] = example.src_langs;
  obj["source"] = example.source;
  obj["target"] = example.target;
  return obj.dump();
}

}  // namespace trimine::noising
