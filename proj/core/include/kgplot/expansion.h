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

#ifndef KGPLOT_EXPANSION_H_
#define KGPLOT_EXPANSION_H_

#include <set>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "kgplot/concept_store.h"
#include "kgplot/graph.h"
#include "kgplot/providers.h"

namespace kgplot {

struct ChainHop {
  std::string event;
  std::string relation;

  bool operator==(const ChainHop &) const = default;
};

// A path of event inferences rooted at story text or at the goal.
struct InferenceChain {
  std::string root;
  std::vector<ChainHop> hops;

  std::size_t length() const { return hops.size(); }
  nlohmann::json to_json() const;
  bool operator==(const InferenceChain &) const = default;
};

enum class Track { kEntity, kEvent };
std::string_view to_string(Track track);

struct CandidateExpansion {
  Node seed;
  Track track = Track::kEntity;
  std::vector<Node> inference_set;  // sorted by id; contains the seed
  KnowledgeGraph graph;             // parent graph merged with inference_set
  std::vector<InferenceChain> chains;
};

struct ExpansionConfig {
  int depth_story = 2;    // look-ahead for reader-model candidates
  int depth_goal = 2;     // look-ahead for the goal world state
  int provider_beam = 5;  // inferences per event relation
  int fanout = 5;         // children kept per concept-store hop

  void validate() const;
};

// Nodes plus the provenance edges (parent, relation, child) that produced them.
struct Closure {
  std::vector<Node> nodes;  // sorted by id
  std::vector<Triple> edges;
  std::vector<InferenceChain> chains;
};

// Breadth-first closure of `seed` over the concept store, `depth` hops out,
// keeping the `fanout` heaviest children per node. Ids in `exclude` (and
// self-loops) are never visited. Inferred nodes sit at seed.depth + hop.
Closure expand_entity(const Node &seed, const ConceptStore &store, int depth, int fanout,
                      const std::set<std::string> &exclude = {});

// First-level social-event inferences on the concatenated history, in
// (relation, provider rank) order, deduplicated.
std::vector<Node> infer_events(std::span<const std::string> history,
                               const EventInferenceProvider &provider, int beam);

// Entities attached to an event (or any node): provider inferences over the
// physical-entity relations plus concept-store neighbours of the phrase and
// of its content words.
Closure relevant_entities(const Node &event, const ConceptStore &store,
                          const EventInferenceProvider &provider, int beam, int fanout);

// Event-track closure: `depth` hops of social-event inference from the seed,
// then relevant entities for every event reached. Chains are the
// root-to-leaf event paths rooted at the seed.
Closure expand_event(const Node &seed, const EventInferenceProvider &provider,
                     const ConceptStore &store, int depth, int beam, int fanout,
                     const std::set<std::string> &exclude = {});

std::vector<CandidateExpansion> candidate_expansions(const KnowledgeGraph &graph,
                                                     std::span<const std::string> history,
                                                     const ConceptStore &store,
                                                     const EventInferenceProvider &provider,
                                                     const ExpansionConfig &config);

struct ExpandedGoal {
  KnowledgeGraph graph;
  std::vector<InferenceChain> chains;
};

ExpandedGoal expand_goal(const KnowledgeGraph &goal_graph, const std::string &goal_text,
                         const ConceptStore &store, const EventInferenceProvider &provider,
                         const ExpansionConfig &config);

}  // namespace kgplot

#endif  // KGPLOT_EXPANSION_H_
