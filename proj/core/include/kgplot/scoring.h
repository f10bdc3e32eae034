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

#ifndef KGPLOT_SCORING_H_
#define KGPLOT_SCORING_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "kgplot/expansion.h"
#include "kgplot/graph.h"
#include "kgplot/providers.h"

namespace kgplot {

// A story-side chain and a goal-side chain that meet at two similar events.
struct Link {
  InferenceChain story_chain;
  InferenceChain goal_chain;
  std::string story_event;
  std::string goal_event;
  double similarity = 0.0;
  // story root, story hops up to the meeting event, goal hops back to the goal root
  std::vector<std::string> path;

  nlohmann::json to_json() const;
  bool operator==(const Link &) const = default;
};

struct ScoreBreakdown {
  double r1 = 0.0;
  double r2 = 0.0;
  double alpha = 0.5;
  double R = 0.0;
  std::optional<Link> link;

  nlohmann::json to_json() const;
};

// Fraction of the goal's story nodes whose id appears among the story-kind
// nodes of `candidate`. Inferred nodes on either side are ignored.
double entity_overlap_r1(const KnowledgeGraph &candidate, const KnowledgeGraph &goal);

// Fraction of the expanded goal's nodes matched by some node of the
// inference set.
double inference_overlap_r2(std::span<const Node> inference_set,
                            const KnowledgeGraph &expanded_goal);

// Reader model with the candidate concept written into the story: story
// nodes of the candidate graph plus the seed promoted to a story node.
KnowledgeGraph story_view(const CandidateExpansion &candidate);

// Maps a raw similarity matrix into [0,1]: (1+x)/2 when any entry is
// negative, then clamped.
SimilarityMatrix normalize_similarity(SimilarityMatrix m);

std::optional<Link> detect_link(std::span<const InferenceChain> story_chains,
                                std::span<const InferenceChain> goal_chains,
                                const EmbeddingSimilarityProvider &embed, double threshold);

// Weighted score. The second form also looks for an inference link; a link
// overrides R to 1.
ScoreBreakdown combined_score(const CandidateExpansion &candidate, const KnowledgeGraph &goal,
                              const KnowledgeGraph &expanded_goal, double alpha);
ScoreBreakdown combined_score(const CandidateExpansion &candidate, const KnowledgeGraph &goal,
                              const KnowledgeGraph &expanded_goal,
                              std::span<const InferenceChain> goal_chains,
                              const EmbeddingSimilarityProvider &embed, double alpha,
                              double link_threshold);

struct ScoredCandidate {
  int beam = 0;
  std::size_t index = 0;  // position in that beam's candidate list
  std::string seed_id;
  ScoreBreakdown score;
};

// Strict ranking: R desc, r1 desc, r2 desc, seed id asc, beam asc, index asc.
bool ranks_before(const ScoredCandidate &a, const ScoredCandidate &b);
std::vector<ScoredCandidate> rank_candidates(std::vector<ScoredCandidate> scored);
std::vector<ScoredCandidate> select_topk(std::vector<ScoredCandidate> scored, int k);

}  // namespace kgplot

#endif  // KGPLOT_SCORING_H_
