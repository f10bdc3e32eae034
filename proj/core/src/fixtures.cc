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

#include "kgplot/fixtures.h"

#include <fstream>
#include <sstream>

#include "kgplot/error.h"
#include "kgplot/text.h"

namespace kgplot {
namespace {

using json = nlohmann::json;

FixtureTables::TextPair sorted_pair(std::string a, std::string b) {
  if (b < a) std::swap(a, b);
  return {std::move(a), std::move(b)};
}

std::vector<SrlRecord> parse_srl_records(const json &records, int index) {
  std::vector<SrlRecord> out;
  for (const auto &r : records) {
    SrlRecord rec;
    rec.frame = r.at("frame").get<std::string>();
    rec.sentence_index = index;
    if (r.contains("args")) {
      for (const auto &[role, text] : r["args"].items()) {
        rec.args[role] = text.get<std::string>();
      }
    }
    out.push_back(std::move(rec));
  }
  return out;
}

// Tracks the line on which each key was first defined.
class KeyLedger {
 public:
  explicit KeyLedger(std::string source) : source_(std::move(source)) {}

  void claim(const std::string &kind, const std::string &key, int line) {
    auto [it, inserted] = lines_.try_emplace(kind + '\x1f' + key, line);
    if (!inserted) {
      throw LoadError(source_, line,
                      "duplicate " + kind + " key '" + key + "' (lines " +
                          std::to_string(it->second) + " and " + std::to_string(line) +
                          ")");
    }
  }

 private:
  std::string source_;
  std::map<std::string, int> lines_;
};

}  // namespace

bool FixtureTables::empty() const {
  return events.empty() && infill.empty() && sentence_scores.empty() &&
         token_scores.empty() && similarity.empty() && srl_by_sentence.empty() &&
         srl_by_index.empty();
}

std::vector<EventInference> FixtureTables::lookup_events(std::string_view text,
                                                         std::string_view relation) const {
  auto it = events.find({normalize_key(text), std::string(relation)});
  if (it == events.end()) return {};
  return it->second;
}

InfillResult FixtureTables::lookup_infill(std::string_view masked_template,
                                          std::string_view context) const {
  const std::string tmpl = collapse_whitespace(masked_template);
  if (auto it = infill.find({tmpl, normalize_key(context)}); it != infill.end()) {
    return it->second;
  }
  if (auto it = infill.find({tmpl, std::string()}); it != infill.end()) return it->second;
  return {};
}

std::vector<double> FixtureTables::lookup_scores(std::string_view continuation) const {
  if (auto it = sentence_scores.find(normalize_key(continuation));
      it != sentence_scores.end()) {
    return it->second;
  }
  std::vector<double> out;
  for (const std::string &tok : split_words(continuation)) {
    auto it = token_scores.find(normalize_key(tok));
    out.push_back(it == token_scores.end() ? default_token_logprob : it->second);
  }
  return out;
}

double FixtureTables::lookup_similarity(std::string_view a, std::string_view b) const {
  std::string ka = normalize_key(a), kb = normalize_key(b);
  if (auto it = similarity.find(sorted_pair(ka, kb)); it != similarity.end()) {
    return it->second;
  }
  return ka == kb ? 1.0 : 0.0;
}

std::vector<SrlRecord> FixtureTables::lookup_srl(std::string_view sentence,
                                                 int index) const {
  if (auto it = srl_by_sentence.find(normalize_key(sentence)); it != srl_by_sentence.end()) {
    return it->second;
  }
  if (auto it = srl_by_index.find(index); it != srl_by_index.end()) return it->second;
  return {};
}

FixtureTables parse_fixtures(std::istream &in, const std::string &source) {
  FixtureTables t;
  KeyLedger keys(source);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string trimmed = collapse_whitespace(line);
    if (trimmed.empty() || trimmed[0] == '#') continue;
    json j;
    try {
      j = json::parse(trimmed);
    } catch (const json::parse_error &e) {
      throw LoadError(source, lineno, std::string("malformed JSON: ") + e.what());
    }
    try {
      const std::string kind = j.at("kind").get<std::string>();
      if (kind == "event") {
        const std::string text = normalize_key(j.at("text").get<std::string>());
        const std::string relation = j.at("relation").get<std::string>();
        keys.claim(kind, text + " / " + relation, lineno);
        std::vector<EventInference> results;
        int rank = 0;
        for (const auto &r : j.at("results")) {
          EventInference ev;
          ev.relation = relation;
          if (r.is_string()) {
            ev.text = r.get<std::string>();
            ev.score = -static_cast<double>(rank);
          } else {
            ev.text = r.at("text").get<std::string>();
            ev.score = r.value("score", -static_cast<double>(rank));
          }
          ++rank;
          results.push_back(std::move(ev));
        }
        t.events[{text, relation}] = std::move(results);
      } else if (kind == "infill") {
        const std::string tmpl = collapse_whitespace(j.at("template").get<std::string>());
        const std::string ctx = normalize_key(j.value("context", std::string()));
        keys.claim(kind, tmpl + " | " + ctx, lineno);
        t.infill[{tmpl, ctx}] =
            InfillResult{j.at("filled").get<std::string>(), j.value("score", 0.0)};
      } else if (kind == "score") {
        const std::string text = normalize_key(j.at("text").get<std::string>());
        keys.claim(kind, text, lineno);
        t.sentence_scores[text] = j.at("token_logprobs").get<std::vector<double>>();
      } else if (kind == "token") {
        const std::string tok = normalize_key(j.at("token").get<std::string>());
        keys.claim(kind, tok, lineno);
        t.token_scores[tok] = j.at("logprob").get<double>();
      } else if (kind == "token_default") {
        keys.claim(kind, "default", lineno);
        t.default_token_logprob = j.at("logprob").get<double>();
      } else if (kind == "similarity") {
        auto key = sorted_pair(normalize_key(j.at("a").get<std::string>()),
                               normalize_key(j.at("b").get<std::string>()));
        keys.claim(kind, key.first + " ~ " + key.second, lineno);
        const double v = j.at("value").get<double>();
        if (v < 0.0 || v > 1.0) {
          throw LoadError(source, lineno, "similarity value outside [0,1]");
        }
        t.similarity[key] = v;
      } else if (kind == "srl") {
        if (j.contains("sentence")) {
          const std::string s = normalize_key(j["sentence"].get<std::string>());
          keys.claim(kind, s, lineno);
          t.srl_by_sentence[s] = parse_srl_records(j.at("records"), j.value("sentence_index", 0));
        } else {
          const int idx = j.at("sentence_index").get<int>();
          keys.claim(kind, "#" + std::to_string(idx), lineno);
          t.srl_by_index[idx] = parse_srl_records(j.at("records"), idx);
        }
      } else {
        throw LoadError(source, lineno, "unknown record kind '" + kind + "'");
      }
    } catch (const json::exception &e) {
      throw LoadError(source, lineno, std::string("bad record: ") + e.what());
    }
  }
  return t;
}

FixtureTables load_fixtures(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw LoadError(path.string(), 0, "cannot open fixture bundle");
  return parse_fixtures(in, path.string());
}

void add_srl_records(FixtureTables &tables, const json &array, const std::string &source) {
  if (!array.is_array()) throw LoadError(source, 0, "SRL fixture must be a JSON array");
  int n = 0;
  for (const auto &r : array) {
    ++n;
    try {
      SrlRecord rec;
      rec.frame = r.at("frame").get<std::string>();
      rec.sentence_index = r.at("sentence_index").get<int>();
      if (r.contains("args")) {
        for (const auto &[role, text] : r["args"].items()) {
          rec.args[role] = text.get<std::string>();
        }
      }
      if (r.contains("sentence")) {
        tables.srl_by_sentence[normalize_key(r["sentence"].get<std::string>())].push_back(rec);
      } else {
        tables.srl_by_index[rec.sentence_index].push_back(std::move(rec));
      }
    } catch (const json::exception &e) {
      throw LoadError(source, 0, "SRL record " + std::to_string(n) + ": " + e.what());
    }
  }
}

void load_srl_fixture(FixtureTables &tables, const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw LoadError(path.string(), 0, "cannot open SRL fixture");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error &e) {
    throw LoadError(path.string(), 0, std::string("malformed JSON: ") + e.what());
  }
  add_srl_records(tables, j, path.string());
}

ProviderSet FixtureBackend::providers() const {
  return ProviderSet{this, this, this, this, this};
}

std::vector<SrlRecord> FixtureBackend::parse(std::string_view sentence, int index) const {
  return tables_.lookup_srl(sentence, index);
}

std::vector<EventInference> FixtureBackend::infer(std::string_view text,
                                                  std::span<const std::string> relations,
                                                  int beam) const {
  if (beam < 1) throw ValidationError("beam must be >= 1");
  std::vector<EventInference> out;
  for (const std::string &rel : relations) {
    auto rows = tables_.lookup_events(text, rel);
    if (rows.size() > static_cast<std::size_t>(beam)) rows.resize(beam);
    out.insert(out.end(), rows.begin(), rows.end());
  }
  return out;
}

InfillResult FixtureBackend::infill(std::string_view context,
                                    std::string_view masked_template) const {
  return tables_.lookup_infill(masked_template, context);
}

std::vector<double> FixtureBackend::token_logprobs(std::string_view,
                                                   std::string_view continuation) const {
  return tables_.lookup_scores(continuation);
}

SimilarityMatrix FixtureBackend::similarity(std::span<const std::string> a,
                                            std::span<const std::string> b) const {
  SimilarityMatrix m(a.size(), std::vector<double>(b.size(), 0.0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) m[i][j] = tables_.lookup_similarity(a[i], b[j]);
  }
  return m;
}

}  // namespace kgplot
