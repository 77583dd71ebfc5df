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
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "trimine/corpus.h"
#include "trimine/metrics.h"
#include "trimine/noising.h"
#include "trimine/pairing.h"

namespace trimine::pipeline {

// Stage files inside the work directory.
inline constexpr const char* kDocumentsFile = "documents.jsonl";
inline constexpr const char* kCleanFile = "clean.jsonl";
inline constexpr const char* kRejectsFile = "rejects.jsonl";
inline constexpr const char* kPivotFile = "pivot.jsonl";
inline constexpr const char* kPairsFile = "pairs.jsonl";
inline constexpr const char* kTriplesFile = "triples.jsonl";
inline constexpr const char* kExamplesFile = "examples.jsonl";

struct PipelineConfig {
  corpus::CleaningRules cleaning;
  pairing::PairingConfig pairing;
  noising::NoiseConfig noise;
  std::optional<std::uint64_t> seed;  // required by the noise stage
  std::filesystem::path input;        // raw corpus for ingest
  std::filesystem::path workdir = ".";
  std::filesystem::path lexicon;      // empty: identity pivot
  bool lenient = false;
  unsigned jobs = 1;
};

// Every invariant of every component config, all violations at once.
std::vector<std::string> validate_config(const PipelineConfig& cfg);

struct StageReport {
  std::string stage;
  std::map<std::string, std::size_t> counts;
};

// input -> documents.jsonl
StageReport run_ingest(const PipelineConfig& cfg);
// documents.jsonl -> clean.jsonl, rejects.jsonl
StageReport run_clean(const PipelineConfig& cfg);
// clean.jsonl (+ lexicon) -> pivot.jsonl
StageReport run_pivot(const PipelineConfig& cfg);
// clean.jsonl, pivot.jsonl -> pairs.jsonl
StageReport run_pair(const PipelineConfig& cfg);
// clean.jsonl, pairs.jsonl -> triples.jsonl
StageReport run_link(const PipelineConfig& cfg);
// clean.jsonl, triples.jsonl -> examples.jsonl
StageReport run_noise(const PipelineConfig& cfg);

// ingest through noise, in order.
std::vector<StageReport> run_all(const PipelineConfig& cfg);

// Per-stage record counts plus triple statistics, as one JSON object.
std::string stats_json(const PipelineConfig& cfg);

// Hypothesis and reference files hold {id, text} lines; documents are
// matched by id in reference order.
metrics::BleuReport score_files(const std::filesystem::path& hyp,
                                const std::filesystem::path& ref);

std::string to_json(const StageReport& report);

}  // namespace trimine::pipeline
