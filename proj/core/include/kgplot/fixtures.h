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

#ifndef KGPLOT_FIXTURES_H_
#define KGPLOT_FIXTURES_H_

#include <filesystem>
#include <istream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "kgplot/providers.h"

namespace kgplot {

// Deterministic lookup tables standing in for the neural roles. Text keys
// are stored through normalize_key() so punctuation and case do not matter.
//
// On disk a bundle is JSON lines, one record per line, discriminated by
// "kind":
//   {"kind":"event","text":T,"relation":R,"results":[S | {"text":S,"score":F}...]}
//   {"kind":"infill","template":T,"context":C?,"filled":S,"score":F?}
//   {"kind":"score","text":S,"token_logprobs":[F...]}
//   {"kind":"token","token":W,"logprob":F}
//   {"kind":"token_default","logprob":F}
//   {"kind":"similarity","a":S,"b":S,"value":F}
//   {"kind":"srl","sentence":S | "sentence_index":I,"records":[{"frame":F,"args":{..}}]}
// Blank lines and lines starting with '#' are skipped.
struct FixtureTables {
  using TextPair = std::pair<std::string, std::string>;

  std::map<TextPair, std::vector<EventInference>> events;  // (text, relation)
  std::map<TextPair, InfillResult> infill;                 // (template, context or "")
  std::map<std::string, std::vector<double>> sentence_scores;
  std::map<std::string, double> token_scores;
  double default_token_logprob = -1.0;
  std::map<TextPair, double> similarity;  // unordered pair, stored sorted
  std::map<std::string, std::vector<SrlRecord>> srl_by_sentence;
  std::map<int, std::vector<SrlRecord>> srl_by_index;

  bool empty() const;

  std::vector<EventInference> lookup_events(std::string_view text,
                                            std::string_view relation) const;
  // Empty fill when no row matches.
  InfillResult lookup_infill(std::string_view masked_template,
                             std::string_view context) const;
  std::vector<double> lookup_scores(std::string_view continuation) const;
  // Table value, else 1.0 for texts with equal keys, else 0.0.
  double lookup_similarity(std::string_view a, std::string_view b) const;
  std::vector<SrlRecord> lookup_srl(std::string_view sentence, int index) const;
};

FixtureTables load_fixtures(const std::filesystem::path &path);
FixtureTables parse_fixtures(std::istream &in, const std::string &source);

// Standalone SRL fixture: a JSON array of
// {"sentence_index": int, "frame": str, "args": {role: text}, "sentence"?: str}.
void add_srl_records(FixtureTables &tables, const nlohmann::json &array,
                     const std::string &source);
void load_srl_fixture(FixtureTables &tables, const std::filesystem::path &path);

// All five neural roles answered from one set of tables.
class FixtureBackend final : public SrlProvider,
                             public EventInferenceProvider,
                             public InfillProvider,
                             public SequenceScorerProvider,
                             public EmbeddingSimilarityProvider {
 public:
  explicit FixtureBackend(FixtureTables tables) : tables_(std::move(tables)) {}

  const FixtureTables &tables() const { return tables_; }
  ProviderSet providers() const;

  std::vector<SrlRecord> parse(std::string_view sentence, int index) const override;
  std::vector<EventInference> infer(std::string_view text,
                                    std::span<const std::string> relations,
                                    int beam) const override;
  InfillResult infill(std::string_view context,
                      std::string_view masked_template) const override;
  std::vector<double> token_logprobs(std::string_view context,
                                     std::string_view continuation) const override;
  SimilarityMatrix similarity(std::span<const std::string> a,
                              std::span<const std::string> b) const override;

 private:
  FixtureTables tables_;
};

}  // namespace kgplot

#endif  // KGPLOT_FIXTURES_H_
