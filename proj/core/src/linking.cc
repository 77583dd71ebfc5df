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

#include "trimine/linking.h"

#include <algorithm>
#include <set>
#include <unordered_map>
#include <utility>

#include "json.hpp"

#include "trimine/error.h"

namespace trimine::linking {

namespace {

struct Member {
  std::size_t pair;
  int side;  // 0: doc_a, 1: doc_b
};

const corpus::DocId& member_id(const pairing::BilingualPair& p, int side) {
  return side == 0 ? p.doc_a : p.doc_b;
}

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

}  // namespace

std::string normalize_url(std::string_view url) {
  const std::size_t hash = url.find('#');
  if (hash != std::string_view::npos) url = url.substr(0, hash);

  std::string out;
  const std::size_t scheme_end = url.find("://");
  if (scheme_end != std::string_view::npos) {
    const std::size_t host_begin = scheme_end + 3;
    std::size_t host_end = url.find_first_of("/?", host_begin);
    if (host_end == std::string_view::npos) host_end = url.size();
    out = ascii_lower(url.substr(0, host_end));
    out.append(url.substr(host_end));
  } else {
    out.assign(url);
  }
  const std::size_t floor =
      scheme_end != std::string_view::npos ? scheme_end + 3 : 0;
  while (out.size() > floor && out.back() == '/') out.pop_back();
  return out;
}

std::string TrilingualTriple::id() const {
  return ids[0] + "+" + ids[1] + "+" + ids[2];
}

std::vector<TrilingualTriple> link_triples(
    std::span<const pairing::BilingualPair> pairs,
    const corpus::DocumentIndex& docs) {
  // Group pair members by (normalized url, language).
  std::unordered_map<std::string, std::vector<Member>> groups;
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    for (int side = 0; side < 2; ++side) {
      const corpus::Document& doc = docs.at(member_id(pairs[p], side));
      std::string key = normalize_url(doc.url);
      key.push_back('\t');
      key.append(doc.lang);
      groups[std::move(key)].push_back({p, side});
    }
  }

  std::map<std::array<corpus::DocId, 3>, std::array<std::string, 2>> found;
  for (const auto& [key, members] : groups) {
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (std::size_t j = i + 1; j < members.size(); ++j) {
        const Member& x = members[i];
        const Member& y = members[j];
        if (x.pair == y.pair) continue;
        const auto& px = pairs[x.pair];
        const auto& py = pairs[y.pair];
        const corpus::DocId& shared =
            std::min(member_id(px, x.side), member_id(py, y.side));
        const corpus::Document& a = docs.at(member_id(px, 1 - x.side));
        const corpus::Document& c = docs.at(member_id(py, 1 - y.side));
        const corpus::Document& b = docs.at(shared);
        if (a.lang == b.lang || b.lang == c.lang || a.lang == c.lang) continue;

        std::array<corpus::DocId, 3> ids{a.id, b.id, c.id};
        std::sort(ids.begin(), ids.end());
        std::array<std::string, 2> refs{px.ref(), py.ref()};
        std::sort(refs.begin(), refs.end());
        const auto [it, inserted] = found.emplace(ids, refs);
        if (!inserted && refs < it->second) it->second = refs;
      }
    }
  }

  std::vector<TrilingualTriple> out;
  out.reserve(found.size());
  for (const auto& [ids, refs] : found) {
    TrilingualTriple t;
    t.ids = ids;
    for (std::size_t k = 0; k < 3; ++k) t.langs[k] = docs.at(ids[k]).lang;
    t.pair_refs = refs;
    out.push_back(std::move(t));
  }
  return out;
}

TripleStats triple_stats(std::span<const TrilingualTriple> triples) {
  TripleStats stats;
  std::set<std::string_view> documents;
  for (const auto& t : triples) {
    ++stats.total;
    std::array<std::string, 3> langs = t.langs;
    std::sort(langs.begin(), langs.end());
    ++stats.per_combination[langs[0] + "+" + langs[1] + "+" + langs[2]];
    for (const auto& id : t.ids) documents.insert(id);
  }
  stats.distinct_documents = documents.size();
  return stats;
}

std::string to_jsonl(const TrilingualTriple& triple) {
  nlohmann::ordered_json obj;
  obj["x1"] = triple.ids[0];
  obj["x2"] = triple.ids[1];
  obj["x3"] = triple.ids[2];
  obj["langs"] = triple.langs;
  obj["pair_refs"] = triple.pair_refs;
  return obj.dump();
}

TrilingualTriple triple_from_json(std::string_view line, std::size_t line_no) {
  TrilingualTriple t;
  try {
    const auto obj = nlohmann::json::parse(line);
    t.ids = {obj.at("x1").get<std::string>(), obj.at("x2").get<std::string>(),
             obj.at("x3").get<std::string>()};
    const auto langs = obj.at("langs").get<std::vector<std::string>>();
    const auto refs = obj.at("pair_refs").get<std::vector<std::string>>();
    if (langs.size() != 3 || refs.size() != 2) {
      throw RecordError(line_no, "triple needs 3 langs and 2 pair_refs");
    }
    std::copy(langs.begin(), langs.end(), t.langs.begin());
    std::copy(refs.begin(), refs.end(), t.pair_refs.begin());
  } catch (const nlohmann::json::exception& e) {
    throw RecordError(line_no, std::string("invalid triple record: ") + e.what());
  }
  if (!(t.ids[0] < t.ids[1] && t.ids[1] < t.ids[2])) {
    throw RecordError(line_no, "triple members must be distinct and sorted");
  }
  return t;
}

}  // namespace trimine::linking
