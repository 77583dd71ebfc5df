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

// Command-line driver for the trilingual corpus pipeline.
//
//   trimine ingest --input corpus.jsonl --workdir out/
//   trimine clean|pivot|pair|link --workdir out/ [options]
//   trimine noise --workdir out/ --seed 7
//   trimine run --input corpus.jsonl --workdir out/ --seed 7
//   trimine stats --workdir out/
//   trimine score --hyp hyp.jsonl --ref ref.jsonl
//   trimine synth --output-dir data/ --stories 30
//
// Every option can also come from a key = value file given with --config.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "trimine/error.h"
#include "trimine/pipeline.h"
#include "trimine/synthetic.h"

namespace {

namespace fs = std::filesystem;
using trimine::pipeline::PipelineConfig;

constexpr std::int64_t kSecondsPerDay = 86400;

int fail(const std::string& msg, int code = 1) {
  std::cerr << "trimine: error: " << msg << "\n";
  return code;
}

void write_file(const fs::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw trimine::Error("cannot write '" + path.string() + "'");
  out << contents;
}

void write_synthetic(const fs::path& dir, std::size_t stories, std::uint64_t seed) {
  trimine::synthetic::CorpusSpec spec;
  spec.stories = stories;
  spec.seed = seed;
  const auto corpus = trimine::synthetic::generate(spec);
  fs::create_directories(dir);
  std::string jsonl;
  for (const auto& doc : corpus.documents) jsonl += trimine::corpus::to_jsonl(doc) + "\n";
  write_file(dir / "corpus.jsonl", jsonl);
  write_file(dir / "lexicon.tsv", corpus.lexicon_tsv);
  std::string keywords;
  for (const auto& k : corpus.blocked_keywords) {
    keywords += (keywords.empty() ? "" : ",") + k;
  }
  write_file(dir / "pipeline.conf",
             "# trimine configuration for the synthetic corpus\n"
             "blocked-keywords = \"" + keywords + "\"\n"
             "lexicon = \"lexicon.tsv\"\n"
             "seed = 7\n");
  std::cout << "{\"documents\":" << corpus.documents.size() << "}\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mine trilingual document triples and build grafted pre-training examples"};
  app.set_config("--config", "", "Read options from a key = value file");
  app.fallthrough();
  app.require_subcommand(1);

  PipelineConfig cfg;
  std::string input;
  std::string workdir = ".";
  std::string lexicon;
  std::vector<std::string> keywords;
  double window_days = 7.0;
  std::int64_t window_seconds = 0;
  double embed_threshold = 0.0;
  std::uint64_t seed = 0;
  std::string hyp;
  std::string ref;
  std::string output_dir = ".";
  std::size_t stories = 30;
  std::uint64_t synth_seed = 1;

  app.add_option("--input", input, "Raw corpus JSONL (ingest, run)");
  app.add_option("--workdir", workdir, "Directory holding the stage files")
      ->capture_default_str();
  app.add_option("--lexicon", lexicon, "Pivot lexicon TSV: lang, word, english");
  app.add_flag("--lenient", cfg.lenient, "Skip malformed input lines");
  app.add_option("--blocked-keywords", keywords, "Lowercase keywords, comma separated")
      ->delimiter(',');
  app.add_option("--min-sentences", cfg.cleaning.min_sentences)->capture_default_str();
  app.add_option("--max-sentences", cfg.cleaning.max_sentences)->capture_default_str();
  auto* days_opt = app.add_option("--window-days", window_days, "Pairing window in days")
                       ->capture_default_str();
  auto* secs_opt = app.add_option("--window-seconds", window_seconds,
                                  "Pairing window in seconds");
  days_opt->excludes(secs_opt);
  app.add_option("--tfidf-threshold", cfg.pairing.tfidf_threshold)->capture_default_str();
  auto* embed_opt = app.add_option("--embed-threshold", embed_threshold,
                                   "Enable the token-overlap second filter at this score");
  app.add_option("--split-fraction", cfg.noise.split_fraction)->capture_default_str();
  app.add_option("--corruption-ratio", cfg.noise.corruption_ratio)->capture_default_str();
  app.add_option("--mean-span-length", cfg.noise.mean_span_length)->capture_default_str();
  app.add_option("--mask-template", cfg.noise.mask_token_template)->capture_default_str();
  app.add_option("--max-source-tokens", cfg.noise.max_source_tokens)->capture_default_str();
  auto* seed_opt = app.add_option("--seed", seed, "Noise seed (required for noise, run)");
  app.add_option("--jobs", cfg.jobs, "Worker threads per stage")->capture_default_str();

  auto* ingest = app.add_subcommand("ingest", "Validate and segment the raw corpus");
  auto* clean = app.add_subcommand("clean", "Drop noisy documents");
  auto* pivot = app.add_subcommand("pivot", "Translate documents to English pivot text");
  auto* pair = app.add_subcommand("pair", "Mine bilingual document pairs");
  auto* link = app.add_subcommand("link", "Join pairs into trilingual triples by URL");
  auto* noise = app.add_subcommand("noise", "Emit grafted pre-training examples");
  auto* run = app.add_subcommand("run", "Run ingest through noise");
  auto* stats = app.add_subcommand("stats", "Print record counts per stage");
  auto* score = app.add_subcommand("score", "Document-level BLEU");
  score->add_option("--hyp", hyp, "Hypothesis JSONL of {id, text}")->required();
  score->add_option("--ref", ref, "Reference JSONL of {id, text}")->required();
  auto* synth = app.add_subcommand("synth", "Write a synthetic trilingual corpus");
  synth->add_option("--output-dir", output_dir)->capture_default_str();
  synth->add_option("--stories", stories)->capture_default_str();
  synth->add_option("--synth-seed", synth_seed)->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  cfg.input = input;
  cfg.workdir = workdir;
  cfg.lexicon = lexicon;
  cfg.cleaning.blocked_keywords = keywords;
  if (*secs_opt) {
    cfg.pairing.window_seconds = window_seconds;
  } else {
    cfg.pairing.window_seconds =
        static_cast<std::int64_t>(window_days * static_cast<double>(kSecondsPerDay));
  }
  if (*embed_opt) cfg.pairing.embed_threshold = embed_threshold;
  if (*seed_opt) cfg.seed = seed;

  // Relative paths in a config file resolve against the file's directory.
  if (const auto* config = app.get_config_ptr(); config != nullptr && *config) {
    const fs::path base = fs::path(config->as<std::string>()).parent_path();
    if (!lexicon.empty() && fs::path(lexicon).is_relative() &&
        !fs::exists(cfg.lexicon) && fs::exists(base / lexicon)) {
      cfg.lexicon = base / lexicon;
    }
  }

  try {
    if (*score) {
      std::cout << trimine::metrics::to_json(trimine::pipeline::score_files(hyp, ref))
                << "\n";
      return 0;
    }
    if (*synth) {
      write_synthetic(output_dir, stories, synth_seed);
      return 0;
    }
    if (*stats) {
      std::cout << trimine::pipeline::stats_json(cfg) << "\n";
      return 0;
    }

    const auto violations = trimine::pipeline::validate_config(cfg);
    if (!violations.empty()) {
      for (const auto& v : violations) std::cerr << "trimine: invalid config: " << v << "\n";
      return 2;
    }
    if ((*noise || *run) && !cfg.seed) {
      return fail("--seed <u64> is required for noising", 2);
    }

    std::vector<trimine::pipeline::StageReport> reports;
    if (*ingest) reports.push_back(trimine::pipeline::run_ingest(cfg));
    if (*clean) reports.push_back(trimine::pipeline::run_clean(cfg));
    if (*pivot) reports.push_back(trimine::pipeline::run_pivot(cfg));
    if (*pair) reports.push_back(trimine::pipeline::run_pair(cfg));
    if (*link) reports.push_back(trimine::pipeline::run_link(cfg));
    if (*noise) reports.push_back(trimine::pipeline::run_noise(cfg));
    if (*run) reports = trimine::pipeline::run_all(cfg);
    for (const auto& r : reports) std::cout << trimine::pipeline::to_json(r) << "\n";
  } catch (const std::exception& e) {
    return fail(e.what());
  }
  return 0;
}
