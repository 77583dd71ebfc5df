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

#include "trimine/pipeline.h"

#include <algorithm>
#include <fstream>
#include <unordered_map>

#include "json.hpp"

#include "trimine/error.h"
#include "trimine/linking.h"
#include "trimine/parallel.h"
#include "trimine/pivot.h"

namespace trimine::pipeline {

namespace fs = std::filesystem;

namespace {

std::ifstream open_input(const fs::path& path, const char* produced_by) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::string msg = "cannot open '" + path.string() + "'";
    if (produced_by != nullptr) {
      msg += " (run `trimine ";
      msg += produced_by;
      msg += "` first)";
    }
    throw Error(msg);
  }
  return in;
}

// Writes to a sibling temp file and renames on commit, so a failed stage
// never leaves a half-written output behind.
class AtomicWriter {
 public:
  explicit AtomicWriter(fs::path path)
      : path_(std::move(path)), tmp_(path_.string() + ".tmp") {
    if (!path_.parent_path().empty()) fs::create_directories(path_.parent_path());
    out_.open(tmp_, std::ios::binary | std::ios::trunc);
    if (!out_) throw Error("cannot write '" + tmp_.string() + "'");
  }

  ~AtomicWriter() {
    if (!committed_) {
      out_.close();
      std::error_code ec;
      fs::remove(tmp_, ec);
    }
  }

  void line(const std::string& text) { out_ << text << '\n'; }

  void commit() {
    out_.close();
    if (!out_) throw Error("failed writing '" + tmp_.string() + "'");
    fs::rename(tmp_, path_);
    committed_ = true;
  }

 private:
  fs::path path_;
  fs::path tmp_;
  std::ofstream out_;
  bool committed_ = false;
};

fs::path in_workdir(const PipelineConfig& cfg, const char* name) {
  return cfg.workdir / name;
}

std::vector<corpus::Document> read_documents(const fs::path& path,
                                             const char* produced_by, bool lenient) {
  auto in = open_input(path, produced_by);
  try {
    return corpus::ingest_documents(in, {.lenient = lenient}).documents;
  } catch (const RecordError& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

template <typename Parse>
auto read_records(const fs::path& path, const char* produced_by, Parse parse) {
  auto in = open_input(path, produced_by);
  std::vector<decltype(parse(std::string_view{}, std::size_t{}))> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      out.push_back(parse(line, line_no));
    } catch (const RecordError& e) {
      throw Error(path.string() + ": " + e.what());
    }
  }
  return out;
}

std::size_t count_lines(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::size_t n = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) ++n;
  }
  return n;
}

}  // namespace

std::vector<std::string> validate_config(const PipelineConfig& cfg) {
  std::vector<std::string> violations = corpus::validate(cfg.cleaning);
  for (auto& v : pairing::validate(cfg.pairing)) violations.push_back(std::move(v));
  for (auto& v : noising::validate(cfg.noise)) violations.push_back(std::move(v));
  if (cfg.jobs == 0) violations.emplace_back("jobs: must be >= 1");
  return violations;
}

StageReport run_ingest(const PipelineConfig& cfg) {
  if (cfg.input.empty()) throw Error("ingest needs --input <corpus.jsonl>");
  auto in = open_input(cfg.input, nullptr);
  corpus::IngestResult result;
  try {
    result = corpus::ingest_documents(in, {.lenient = cfg.lenient});
  } catch (const RecordError& e) {
    throw Error(cfg.input.string() + ": " + e.what() +
                " (use --lenient to skip malformed lines)");
  }
  AtomicWriter out(in_workdir(cfg, kDocumentsFile));
  for (const auto& doc : result.documents) out.line(corpus::to_jsonl(doc));
  out.commit();
  return {"ingest",
          {{"documents", result.documents.size()}, {"skipped", result.skipped.size()}}};
}

StageReport run_clean(const PipelineConfig& cfg) {
  const auto docs = read_documents(in_workdir(cfg, kDocumentsFile), "ingest", false);
  AtomicWriter kept(in_workdir(cfg, kCleanFile));
  AtomicWriter rejects(in_workdir(cfg, kRejectsFile));
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  for (const auto& doc : docs) {
    const auto result = corpus::clean_document(doc, cfg.cleaning);
    if (const auto* r = std::get_if<corpus::Rejected>(&result)) {
      nlohmann::ordered_json obj;
      obj["id"] = doc.id;
      obj["reason"] = r->message();
      rejects.line(obj.dump());
      ++rejected;
    } else {
      kept.line(corpus::to_jsonl(doc));
      ++accepted;
    }
  }
  kept.commit();
  rejects.commit();
  return {"clean", {{"accepted", accepted}, {"rejected", rejected}}};
}

StageReport run_pivot(const PipelineConfig& cfg) {
  const auto docs = read_documents(in_workdir(cfg, kCleanFile), "clean", false);
  pivot::LexiconLoad lex;
  if (!cfg.lexicon.empty()) {
    auto in = open_input(cfg.lexicon, nullptr);
    try {
      lex = pivot::load_lexicon(in);
    } catch (const RecordError& e) {
      throw Error(cfg.lexicon.string() + ": " + e.what());
    }
  }
  const pivot::LexiconTranslator translator(lex.lexicon);
  std::vector<pivot::PivotText> pivots(docs.size());
  parallel_for(docs.size(), cfg.jobs, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) pivots[i] = translator.translate(docs[i]);
  });
  AtomicWriter out(in_workdir(cfg, kPivotFile));
  for (const auto& p : pivots) out.line(pivot::to_jsonl(p));
  out.commit();
  return {"pivot",
          {{"documents", pivots.size()},
           {"lexicon_entries", lex.loaded},
           {"lexicon_ignored", lex.ignored}}};
}

StageReport run_pair(const PipelineConfig& cfg) {
  const auto docs = read_documents(in_workdir(cfg, kCleanFile), "clean", false);
  auto pivots = read_records(in_workdir(cfg, kPivotFile), "pivot", pivot::pivot_from_json);
  const corpus::DocumentIndex doc_index(docs);
  for (const auto& p : pivots) {
    if (doc_index.find(p.doc_id) == nullptr) {
      throw Error(std::string(kPivotFile) + " references '" + p.doc_id +
                  "' which is not in " + kCleanFile + " (rerun `trimine pivot`)");
    }
  }
  const auto index = pairing::build_tfidf_index(pivots, cfg.jobs);
  for (const auto& d : docs) {
    if (index.find(d.id) == nullptr) {
      throw Error("document '" + d.id + "' has no pivot text (rerun `trimine pivot`)");
    }
  }
  const auto candidates = pairing::candidate_pairs(docs, cfg.pairing);
  std::optional<pairing::JaccardScorer> scorer;
  if (cfg.pairing.embed_threshold) scorer.emplace(pivots);
  const auto pairs = pairing::filter_pairs(candidates, index, doc_index, cfg.pairing,
                                           scorer ? &*scorer : nullptr, cfg.jobs);
  AtomicWriter out(in_workdir(cfg, kPairsFile));
  for (const auto& p : pairs) out.line(pairing::to_jsonl(p));
  out.commit();
  return {"pair",
          {{"documents", docs.size()},
           {"candidates", candidates.size()},
           {"pairs", pairs.size()}}};
}

StageReport run_link(const PipelineConfig& cfg) {
  const auto docs = read_documents(in_workdir(cfg, kCleanFile), "clean", false);
  const auto pairs = read_records(in_workdir(cfg, kPairsFile), "pair", pairing::pair_from_json);
  const corpus::DocumentIndex doc_index(docs);
  std::vector<linking::TrilingualTriple> triples;
  try {
    triples = linking::link_triples(pairs, doc_index);
  } catch (const UnknownDocumentError& e) {
    throw Error(std::string(kPairsFile) + ": " + e.what() + " (rerun `trimine pair`)");
  }
  AtomicWriter out(in_workdir(cfg, kTriplesFile));
  for (const auto& t : triples) out.line(linking::to_jsonl(t));
  out.commit();
  return {"link", {{"pairs", pairs.size()}, {"triples", triples.size()}}};
}

StageReport run_noise(const PipelineConfig& cfg) {
  if (!cfg.seed) throw Error("noise needs --seed <u64>");
  noising::NoiseConfig noise = cfg.noise;
  noise.seed = *cfg.seed;

  const auto docs = read_documents(in_workdir(cfg, kCleanFile), "clean", false);
  auto triples =
      read_records(in_workdir(cfg, kTriplesFile), "link", linking::triple_from_json);
  std::sort(triples.begin(), triples.end(),
            [](const auto& a, const auto& b) { return a.id() < b.id(); });
  const corpus::DocumentIndex doc_index(docs);
  for (const auto& t : triples) {
    for (const auto& id : t.ids) {
      if (doc_index.find(id) == nullptr) {
        throw Error(std::string(kTriplesFile) + " references unknown document '" + id +
                    "' (rerun `trimine link`)");
      }
    }
  }

  const noising::DefaultTokenizer tokenizer;
  const Rng root(noise.seed);
  std::vector<std::vector<noising::PretrainExample>> per_triple(triples.size());
  std::vector<noising::ExampleStats> per_triple_stats(triples.size());
  parallel_for(triples.size(), cfg.jobs, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      per_triple[i] = noising::make_examples(triples[i], doc_index, noise, tokenizer,
                                             root, &per_triple_stats[i]);
    }
  });

  AtomicWriter out(in_workdir(cfg, kExamplesFile));
  noising::ExampleStats total;
  for (std::size_t i = 0; i < triples.size(); ++i) {
    for (const auto& ex : per_triple[i]) out.line(noising::to_jsonl(ex));
    total.emitted += per_triple_stats[i].emitted;
    total.skipped += per_triple_stats[i].skipped;
  }
  out.commit();
  return {"noise",
          {{"triples", triples.size()},
           {"examples", total.emitted},
           {"skipped", total.skipped}}};
}

std::vector<StageReport> run_all(const PipelineConfig& cfg) {
  std::vector<StageReport> reports;
  reports.push_back(run_ingest(cfg));
  reports.push_back(run_clean(cfg));
  reports.push_back(run_pivot(cfg));
  reports.push_back(run_pair(cfg));
  reports.push_back(run_link(cfg));
  reports.push_back(run_noise(cfg));
  return reports;
}

std::string stats_json(const PipelineConfig& cfg) {
  nlohmann::ordered_json obj;
  const std::pair<const char*, const char*> stages[] = {
      {"ingest", kDocumentsFile}, {"clean", kCleanFile},   {"rejects", kRejectsFile},
      {"pivot", kPivotFile},      {"pair", kPairsFile},    {"link", kTriplesFile},
      {"noise", kExamplesFile}};
  for (const auto& [stage, file] : stages) {
    const fs::path path = in_workdir(cfg, file);
    if (fs::exists(path)) {
      obj["stages"][stage] = count_lines(path);
    } else {
      obj["stages"][stage] = nullptr;
    }
  }
  const fs::path triples_path = in_workdir(cfg, kTriplesFile);
  if (fs::exists(triples_path)) {
    const auto triples = read_records(triples_path, "link", linking::triple_from_json);
    const auto stats = linking::triple_stats(triples);
    obj["triples"]["total"] = stats.total;
    obj["triples"]["distinct_documents"] = stats.distinct_documents;
    obj["triples"]["per_combination"] = stats.per_combination;
  }
  return obj.dump();
}

metrics::BleuReport score_files(const fs::path& hyp, const fs::path& ref) {
  using Entry = std::pair<std::string, std::string>;
  auto parse = [](std::string_view line, std::size_t line_no) -> Entry {
    try {
      const auto obj = nlohmann::json::parse(line);
      return {obj.at("id").get<std::string>(), obj.at("text").get<std::string>()};
    } catch (const nlohmann::json::exception& e) {
      throw RecordError(line_no, std::string("expected {id, text}: ") + e.what());
    }
  };
  const auto hyps = read_records(hyp, nullptr, parse);
  const auto refs = read_records(ref, nullptr, parse);

  std::unordered_map<std::string, const std::string*> by_id;
  for (const auto& [id, text] : hyps) {
    if (!by_id.emplace(id, &text).second) {
      throw Error(hyp.string() + ": duplicate id '" + id + "'");
    }
  }
  std::vector<metrics::DocPair> pairs;
  pairs.reserve(refs.size());
  for (const auto& [id, text] : refs) {
    const auto it = by_id.find(id);
    if (it == by_id.end()) {
      throw Error(hyp.string() + ": no hypothesis for reference id '" + id + "'");
    }
    pairs.push_back({*it->second, text});
    by_id.erase(it);
  }
  if (!by_id.empty()) {
    std::string first = by_id.begin()->first;
    for (const auto& [id, _] : by_id) first = std::min(first, id);
    throw Error(ref.string() + ": no reference for hypothesis id '" + first + "'");
  }
  return metrics::d_bleu(pairs);
}

std::string to_json(const StageReport& report) {
  nlohmann::ordered_json obj;
  obj["stage"] = report.stage;
  obj["counts"] = report.counts;
  return obj.dump();
}

}  // namespace trimine::pipeline
