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
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "trimine/corpus.h"
#include "trimine/pairing.h"

namespace trimine::linking {

// Join key for URL matching: scheme and host lowercased, fragment dropped,
// trailing slashes removed. Path and query keep their case.
std::string normalize_url(std::string_view url);

// Three documents with the same content in three distinct languages.
struct TrilingualTriple {
  std::array<corpus::DocId, 3> ids;     // lexicographic order
  std::array<std::string, 3> langs;     // langs[i] is the language of ids[i]
  std::array<std::string, 2> pair_refs;  // BilingualPair::ref() of the witnesses

  // Stable identifier, "x1+x2+x3".
  std::string id() const;

  friend bool operator==(const TrilingualTriple&,
                         const TrilingualTriple&) = default;
};

// Joins pairs (A, B) and (B', C) where B and B' share a normalized URL and
// a language, and A, B, C have pairwise distinct languages. B' may be B
// itself. When B != B', the lexicographically smaller of the two stands in
// the triple. Triples are deduplicated by member set, keeping the smallest
// witness pair refs, and sorted by member ids. Throws UnknownDocumentError
// for pairs that reference documents missing from `docs`.
std::vector<TrilingualTriple> link_triples(std::span<const pairing::BilingualPair> pairs,
                                           const corpus::DocumentIndex& docs);

struct TripleStats {
  std::size_t total = 0;
  std::size_t distinct_documents = 0;
  // Keyed by the sorted languages joined with '+', e.g. "en+ja+zh".
  std::map<std::string, std::size_t> per_combination;

  friend bool operator==(const TripleStats&, const TripleStats&) = default;
};

TripleStats triple_stats(std::span<const TrilingualTriple> triples);

std::string to_jsonl(const TrilingualTriple& triple);
TrilingualTriple triple_from_json(std::string_view line, std::size_t line_no);

}  // namespace trimine::linking
