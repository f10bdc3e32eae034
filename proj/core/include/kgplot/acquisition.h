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

#ifndef KGPLOT_ACQUISITION_H_
#define KGPLOT_ACQUISITION_H_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kgplot/graph.h"
#include "kgplot/providers.h"

namespace kgplot {

// Mention text -> canonical entity id. Canonical ids are fixed points:
// resolving an id that is not itself a mention returns it unchanged.
class CorefMap {
 public:
  void add(std::string mention, std::string canonical_id, std::string canonical_surface);

  // Exact lookup first, then case-insensitive.
  std::optional<std::string> lookup(std::string_view mention) const;
  // Canonical surface recorded for an id, if any.
  std::optional<std::string> surface_of(std::string_view id) const;

  const std::map<std::string, std::string, std::less<>> &entries() const {
    return mentions_;
  }
  bool empty() const { return mentions_.empty(); }

 private:
  std::map<std::string, std::string, std::less<>> mentions_;
  std::map<std::string, std::string, std::less<>> surfaces_;
};

class CorefProvider {
 public:
  virtual ~CorefProvider() = default;
  virtual CorefMap resolve(std::span<const std::string> sentences) const = 0;
};

// Pronouns resolve to the most recent preceding capitalized name of a
// compatible gender (see lexicon::name_gender); names map to themselves;
// anything unresolved becomes "unknown_<n>".
CorefMap rule_coref(std::span<const std::string> sentences);

class RuleCorefProvider final : public CorefProvider {
 public:
  CorefMap resolve(std::span<const std::string> sentences) const override {
    return rule_coref(sentences);
  }
};

// Roles drawn from the VerbAtlas inventory; other argument keys are ignored.
bool is_verbatlas_role(std::string_view role);

struct ConvertedTriple {
  Triple triple;
  Node subject;
  Node object;
};

struct SrlConversion {
  std::vector<ConvertedTriple> triples;
  // Nodes from records with a single filled role.
  std::vector<Node> lone_nodes;
  // Subject node of the record, when any role was filled.
  std::optional<Node> subject;
};

SrlConversion srl_to_triples(const SrlRecord &record, const CorefMap &coref);

struct AcquiredSentences {
  KnowledgeGraph graph;
  // Subject nodes of each converted sentence, in record order.
  std::vector<std::vector<Node>> subjects;
};

// Converts sentences [first, end) of `story`; coreference is resolved over
// the whole story so later pronouns can bind to earlier names.
AcquiredSentences acquire(std::span<const std::string> story, std::size_t first,
                          const SrlProvider &srl, const CorefProvider &coref);

KnowledgeGraph build_graph(std::span<const std::string> sentences, const SrlProvider &srl,
                           const CorefProvider &coref);

}  // namespace kgplot

#endif  // KGPLOT_ACQUISITION_H_
