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
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "trimine/corpus.h"
#include "trimine/linking.h"
#include "trimine/rng.h"

namespace trimine::noising {

struct NoiseConfig {
  double split_fraction = 0.5;
  double corruption_ratio = 0.15;
  double mean_span_length = 3.0;
  std::string mask_token_template = "<mask_{k}>";
  std::size_t max_source_tokens = 512;
  std::uint64_t seed = 0;
};

std::vector<std::string> validate(const NoiseConfig& cfg);

// Subword tokenizers plug in here.
class Tokenizer {
 public:
  virtual ~Tokenizer() = default;
  virtual std::vector<std::string> tokenize(std::string_view text) const = 0;
};

// Splits on whitespace, then breaks punctuation and CJK characters into
// their own tokens. The first token of every whitespace-delimited word
// carries a leading U+2581 marker, so detokenize() restores the text up to
// whitespace normalization.
class DefaultTokenizer final : public Tokenizer {
 public:
  static constexpr std::string_view kWordMarker = "▁";

  std::vector<std::string> tokenize(std::string_view text) const override;

  static std::string detokenize(std::span<const std::string> tokens);
};

// Tokenizes each sentence in order and concatenates the results.
std::vector<std::string> tokenize_sentences(std::span<const std::string> sentences,
                                            const Tokenizer& tokenizer);

struct Halves {
  std::vector<std::string> head;
  std::vector<std::string> tail;
};

// head = first ceil(f * n) sentences, tail = the rest. Empty when the
// document has fewer than two sentences and must be skipped.
std::optional<Halves> split_half(const corpus::Document& doc, double fraction);

// head(first) ++ tail(second); empty if either document has to be skipped.
std::optional<std::vector<std::string>> graft_ordered(const corpus::Document& first,
                                                      const corpus::Document& second,
                                                      double fraction);

// One fair coin from `rng` picks which document contributes the head:
// heads gives head(a) ++ tail(b), tails gives head(b) ++ tail(a). The coin
// is drawn before any skip check so the stream position does not depend on
// the inputs.
std::optional<std::vector<std::string>> graft(const corpus::Document& a,
                                              const corpus::Document& b,
                                              double fraction, Rng& rng);

// Seeded Fisher-Yates shuffle.
template <typename T>
std::vector<T> permute_sentences(std::vector<T> items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng.uniform_below(i));
    using std::swap;
    swap(items[i - 1], items[j]);
  }
  return items;
}

// Expands the single "{k}" slot of `tmpl`.
std::string mask_token(std::string_view tmpl, std::size_t k);

// True when `token` is `tmpl` with a decimal number in the slot.
bool is_mask_token(std::string_view token, std::string_view tmpl);

// Masks exactly round(ratio * n) tokens. Span lengths are geometric with
// the given mean, clamped to the remaining budget; each span gets a random
// free position (up to 1000 tries) before falling back to the leftmost free
// cells. Every maximal run of masked positions becomes one mask token,
// numbered 0, 1, ... from the left.
std::vector<std::string> corrupt_spans(std::span<const std::string> tokens,
                                       double ratio, double mean_span_length,
                                       std::string_view mask_template, Rng& rng);

// The full noise operator on two documents of a triple:
// graft -> sentence permutation -> tokenization -> span corruption, all
// drawing from `rng` in that order. Empty when a document is too short.
std::optional<std::vector<std::string>> apply_noise(const corpus::Document& a,
                                                    const corpus::Document& b,
                                                    const NoiseConfig& cfg,
                                                    const Tokenizer& tokenizer,
                                                    Rng& rng);

struct PretrainExample {
  std::string triple_id;
  std::string tgt_lang;
  std::array<std::string, 2> src_langs;
  std::vector<std::string> source;  // starts with the "<2xx>" tag
  std::vector<std::string> target;

  friend bool operator==(const PretrainExample&, const PretrainExample&) = default;
};

std::string language_tag(std::string_view lang);

struct ExampleStats {
  std::size_t emitted = 0;
  std::size_t skipped = 0;  // combinations with a too-short graft input
};

// Up to three examples, one per choice of target document, in member
// order. The two remaining documents are grafted in id order. Each
// example draws from root.fork("<triple id>/<target lang>"), so skipping
// one combination leaves the others unchanged. Source and target are both
// capped at max_source_tokens (the tag is not counted).
std::vector<PretrainExample> make_examples(const linking::TrilingualTriple& triple,
                                           const corpus::DocumentIndex& docs,
                                           const NoiseConfig& cfg,
                                           const Tokenizer& tokenizer,
                                           const Rng& root,
                                           ExampleStats* stats = nullptr);

std::string to_jsonl(const PretrainExample& example);

}  // namespace trimine::noising
