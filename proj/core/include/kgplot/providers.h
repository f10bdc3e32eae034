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

#ifndef KGPLOT_PROVIDERS_H_
#define KGPLOT_PROVIDERS_H_

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace kgplot {

// Mask sentinel used in infilling templates, on the wire and in fixtures.
inline constexpr std::string_view kMaskToken = "<mask>";

// Social-interaction relations used for event inference.
inline const std::vector<std::string> &event_relations() {
  static const std::vector<std::string> kRelations = {"xWant", "xNeed", "xEffect",
                                                      "oWant", "oEffect"};
  return kRelations;
}

// Physical-entity relations accepted by the concept store.
inline const std::vector<std::string> &entity_relations() {
  static const std::vector<std::string> kRelations = {
      "AtLocation", "CapableOf",       "HasA",    "HasProperty", "MadeOf",
      "MadeUpOf",   "MotivatedByGoal", "UsedFor", "PartOf"};
  return kRelations;
}

struct SrlRecord {
  std::string frame;
  std::map<std::string, std::string> args;  // role -> argument text
  int sentence_index = 0;
};

struct EventInference {
  std::string relation;
  std::string text;
  double score = 0.0;
};

struct InfillResult {
  std::string filled;
  double score = 0.0;
};

using SimilarityMatrix = std::vector<std::vector<double>>;

class SrlProvider {
 public:
  virtual ~SrlProvider() = default;
  // Records for one sentence; `index` is the sentence position in its story.
  virtual std::vector<SrlRecord> parse(std::string_view sentence, int index) const = 0;
};

class EventInferenceProvider {
 public:
  virtual ~EventInferenceProvider() = default;
  // Up to `beam` inferences per requested relation, best first.
  virtual std::vector<EventInference> infer(std::string_view text,
                                            std::span<const std::string> relations,
                                            int beam) const = 0;
};

class InfillProvider {
 public:
  virtual ~InfillProvider() = default;
  virtual InfillResult infill(std::string_view context,
                              std::string_view masked_template) const = 0;
};

class SequenceScorerProvider {
 public:
  virtual ~SequenceScorerProvider() = default;
  // Natural-log probability of each continuation token given the context
  // and the preceding continuation tokens.
  virtual std::vector<double> token_logprobs(std::string_view context,
                                             std::string_view continuation) const = 0;
};

class EmbeddingSimilarityProvider {
 public:
  virtual ~EmbeddingSimilarityProvider() = default;
  // |a| x |b| similarity matrix.
  virtual SimilarityMatrix similarity(std::span<const std::string> a,
                                      std::span<const std::string> b) const = 0;
};

// Non-owning bundle of the neural roles the planner talks to. Every
// implementation must tolerate concurrent const calls.
struct ProviderSet {
  const SrlProvider *srl = nullptr;
  const EventInferenceProvider *events = nullptr;
  const InfillProvider *infill = nullptr;
  const SequenceScorerProvider *scorer = nullptr;
  const EmbeddingSimilarityProvider *similarity = nullptr;

  // Throws ValidationError naming the first missing role.
  void require_all() const;
};

}  // namespace kgplot

#endif  // KGPLOT_PROVIDERS_H_
