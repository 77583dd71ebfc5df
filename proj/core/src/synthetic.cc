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

#include "trimine/synthetic.h"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "trimine/rng.h"

namespace trimine::synthetic {

namespace {

constexpr std::string_view kConsonants = "bdfgklmnprstvz";
constexpr std::string_view kVowels = "aeiou";
constexpr std::string_view kSpamSentence = "Click here to subscribe for the full advertisement.";

std::string make_word(std::size_t index) {
  const std::size_t base = kConsonants.size() * kVowels.size();
  std::size_t value = index + base;  // at least two syllables
  std::string word;
  while (value > 0) {
    const std::size_t syllable = value % base;
    word.push_back(kConsonants[syllable / kVowels.size()]);
    word.push_back(kVowels[syllable % kVowels.size()]);
    value /= base;
  }
  return word;
}

std::string foreign_word(const std::string& english, const std::string& lang) {
  if (lang == "en") return english;
  return english + "x" + lang;
}

std::string url_for(const std::string& lang, std::size_t story) {
  const std::string s = std::to_string(story);
  if (lang == "en") return "https://news.example.com/en/story/" + s;
  if (lang == "de") return "https://nachrichten.example.de/artikel/" + s;
  if (lang == "fr") return "https://actu.example.fr/article/" + s;
  return "https://" + lang + ".example.org/n/" + s;
}

// Same page as url_for() after normalization.
std::string crawl_variant(const std::string& url) {
  std::string out = url;
  const std::size_t host_end = out.find('/', out.find("://") + 3);
  for (std::size_t i = 0; i < host_end; ++i) {
    if (out[i] >= 'a' && out[i] <= 'z') out[i] = static_cast<char>(out[i] - 32);
  }
  return out + "/#comments";
}

std::string doc_id(const std::string& lang, std::size_t story) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%s-%07zu", lang.c_str(), story);
  return buf;
}

class Zipf {
 public:
  explicit Zipf(std::size_t n) : cumulative_(n) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      total += 1.0 / static_cast<double>(i + 1);
      cumulative_[i] = total;
    }
    for (auto& c : cumulative_) c /= total;
  }

  std::size_t draw(Rng& rng) const {
    const double u = rng.uniform01();
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    return std::min<std::size_t>(static_cast<std::size_t>(it - cumulative_.begin()),
                                 cumulative_.size() - 1);
  }

 private:
  std::vector<double> cumulative_;
};

struct Sentence {
  std::vector<std::size_t> words;
  char end = '.';
};

std::string render(const Sentence& s, const std::vector<std::string>& vocab,
                   const std::string& lang) {
  std::string out;
  for (std::size_t i = 0; i < s.words.size(); ++i) {
    std::string w = foreign_word(vocab[s.words[i]], lang);
    if (i == 0) w[0] = static_cast<char>(w[0] - 32);
    if (i > 0) out.push_back(' ');
    out += w;
  }
  out.push_back(s.end);
  return out;
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out.push_back(' ');
    out += p;
  }
  return out;
}

std::int64_t jitter(Rng& rng, std::int64_t amount) {
  if (amount <= 0) return 0;
  const auto span = static_cast<std::uint64_t>(2 * amount + 1);
  return static_cast<std::int64_t>(rng.uniform_below(span)) - amount;
}

}  // namespace

Corpus generate(const CorpusSpec& spec) {
  Rng rng(spec.seed);
  std::vector<std::string> vocab(spec.vocabulary);
  for (std::size_t i = 0; i < vocab.size(); ++i) vocab[i] = make_word(i);
  const Zipf zipf(vocab.size());

  Corpus out;
  out.blocked_keywords = {"subscribe", "advertisement"};

  for (const auto& lang : spec.langs) {
    if (lang == "en") continue;
    for (const auto& w : vocab) {
      if (rng.uniform01() >= spec.lexicon_coverage) continue;
      out.lexicon_tsv += lang + "\t" + foreign_word(w, lang) + "\t" + w + "\n";
    }
  }

  const std::size_t sentence_span = spec.max_sentences - spec.min_sentences + 1;
  for (std::size_t story = 0; story < spec.stories; ++story) {
    std::vector<Sentence> sentences(spec.min_sentences + rng.uniform_below(sentence_span));
    for (auto& s : sentences) {
      s.words.resize(5 + rng.uniform_below(8));
      for (auto& w : s.words) w = zipf.draw(rng);
      const auto end = rng.uniform_below(10);
      s.end = end == 0 ? '!' : (end == 1 ? '?' : '.');
    }

    std::vector<std::string> langs = spec.langs;
    if (langs.size() > 2 && rng.uniform01() < spec.missing_language_rate) {
      langs.erase(langs.begin() + 1 + static_cast<std::ptrdiff_t>(
                                          rng.uniform_below(langs.size() - 1)));
    }
    const std::int64_t story_time =
        spec.start_timestamp +
        static_cast<std::int64_t>(story) * spec.story_interval_seconds;

    for (const auto& lang : langs) {
      std::vector<Sentence> version = sentences;
      if (version.size() > 3 && rng.uniform01() < 0.2) {
        version.erase(version.begin() +
                      static_cast<std::ptrdiff_t>(rng.uniform_below(version.size())));
      }
      if (version.size() > 2 && rng.uniform01() < 0.2) {
        const auto k = rng.uniform_below(version.size() - 1);
        std::swap(version[k], version[k + 1]);
      }
      if (rng.uniform01() < spec.short_document_rate) version.resize(1);

      std::vector<std::string> rendered;
      for (const auto& s : version) rendered.push_back(render(s, vocab, lang));
      if (rng.uniform01() < spec.spam_rate) rendered.emplace_back(kSpamSentence);

      corpus::Document doc;
      doc.id = doc_id(lang, story);
      doc.lang = lang;
      doc.url = url_for(lang, story);
      doc.timestamp = story_time + jitter(rng, spec.jitter_seconds);
      doc.raw_text = join(rendered);
      doc.sentences = corpus::segment_sentences(doc.raw_text, doc.lang);

      const bool duplicate = lang != "en" && rendered.size() >= 3 &&
                             rng.uniform01() < spec.duplicate_crawl_rate;
      if (duplicate) {
        corpus::Document copy = doc;
        copy.id += "-dup";
        copy.url = crawl_variant(doc.url);
        copy.timestamp = doc.timestamp + 3600;
        rendered.pop_back();
        copy.raw_text = join(rendered);
        copy.sentences = corpus::segment_sentences(copy.raw_text, copy.lang);
        out.documents.push_back(std::move(copy));
      }
      out.documents.push_back(std::move(doc));
    }
  }
  std::sort(out.documents.begin(), out.documents.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });
  return out;
}

}  // namespace trimine::synthetic
