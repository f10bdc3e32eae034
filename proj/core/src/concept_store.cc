// Copyright 2026 The kgplot Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "kgplot/concept_store.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>

#include "kgplot/error.h"
#include "kgplot/providers.h"
#include "kgplot/text.h"

namespace kgplot {
namespace {

std::vector<std::string> split_tabs(const std::string &line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    out.push_back(line.substr(start, tab == std::string::npos ? std::string::npos : tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return out;
}

std::string underscores_to_spaces(std::string_view s) {
  std::string out(s);
  std::replace(out.begin(), out.end(), '_', ' ');
  return collapse_whitespace(out);
}

}  // namespace

bool is_entity_relation(std::string_view relation) {
  const auto &rels = entity_relations();
  return std::find(rels.begin(), rels.end(), relation) != rels.end();
}

ConceptStore ConceptStore::load(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw LoadError(path.string(), 0, "cannot open concept store");
  return parse(in, path.string());
}

ConceptStore ConceptStore::parse(std::istream &in, const std::string &source) {
  ConceptStore store;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (collapse_whitespace(line).empty() || line[0] == '#') continue;
    const auto fields = split_tabs(line);
    if (fields.size() != 4) {
      throw LoadError(source, lineno, "expected 4 tab-separated fields, got " +
                                          std::to_string(fields.size()));
    }
    if (!is_entity_relation(fields[0])) {
      throw LoadError(source, lineno, "unknown relation '" + fields[0] + "'");
    }
    double weight = 0.0;
    const std::string w = collapse_whitespace(fields[3]);
    auto [ptr, ec] = std::from_chars(w.data(), w.data() + w.size(), weight);
    if (ec != std::errc() || ptr != w.data() + w.size() || !std::isfinite(weight)) {
      throw LoadError(source, lineno, "bad weight '" + fields[3] + "'");
    }
    try {
      store.add(fields[0], fields[1], fields[2], weight);
    } catch (const ValidationError &e) {
      throw LoadError(source, lineno, e.what());
    }
  }
  return store;
}

void ConceptStore::add(std::string_view relation, std::string_view head, std::string_view tail,
                       double weight) {
  if (!is_entity_relation(relation)) {
    throw ValidationError("relation '" + std::string(relation) + "' is not allowed");
  }
  ConceptEdge e;
  e.relation = std::string(relation);
  e.head = normalize_id(underscores_to_spaces(head));
  e.tail_surface = underscores_to_spaces(tail);
  e.tail = normalize_id(e.tail_surface);
  e.weight = weight;
  if (e.head.empty() || e.tail.empty()) throw ValidationError("empty concept head or tail");
  by_head_[e.head].push_back(std::move(e));
  ++size_;
}

std::vector<ConceptEdge> ConceptStore::lookup(std::string_view head_id) const {
  auto it = by_head_.find(head_id);
  if (it == by_head_.end()) return {};
  std::vector<ConceptEdge> edges = it->second;
  std::sort(edges.begin(), edges.end(), [](const ConceptEdge &a, const ConceptEdge &b) {
    if (a.weight != b.weight) return a.weight > b.weight;
    if (a.tail != b.tail) return a.tail < b.tail;
    return a.relation < b.relation;
  });
  std::vector<ConceptEdge> unique;
  for (auto &e : edges) {
    const bool seen = std::any_of(unique.begin(), unique.end(),
                                  [&](const ConceptEdge &u) { return u.tail == e.tail; });
    if (!seen) unique.push_back(std::move(e));
  }
  return unique;
}

}  // namespace kgplot
