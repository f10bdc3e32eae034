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

#include "kgplot/scoring.h"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "kgplot/error.h"

namespace kgplot {
namespace {

void check_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw ValidationError("alpha must lie in [0,1], got " + std::to_string(alpha));
  }
}

struct Hit {
  std::size_t chain;
  std::size_t hop;
};

// First chain (and hop) in which each event text occurs, roots excluded.
std::map<std::string, Hit> index_events(std::span<const InferenceChain> chains) {
  std::map<std::string, Hit> out;
  for (std::size_t c = 0; c < chains.size(); ++c) {
    for (std::size_t h = 0; h < chains[c].hops.size(); ++h) {
      out.try_emplace(chains[c].hops[h].event, Hit{c, h});
    }
  }
  return out;
}

}  // namespace

nlohmann::json Link::to_json() const {
  return {{"story_chain", story_chain.to_json()},
          {"goal_chain", goal_chain.to_json()},
          {"story_event", story_event},
          {"goal_event", goal_event},
          {"similarity", similarity},
          {"path", path}};
}

nlohmann::json ScoreBreakdown::to_json() const {
  nlohmann::json j = {{"r1", r1}, {"r2", r2}, {"alpha", alpha}, {"R", R}};
  j["link"] = link ? link->to_json() : nlohmann::json(nullptr);
  return j;
}

double entity_overlap_r1(const KnowledgeGraph &candidate, const KnowledgeGraph &goal) {
  if (goal.empty()) throw ValidationError("goal graph is empty");
  std::size_t total = 0;
  std::size_t matched = 0;
  for (const auto &[id, node] : goal.nodes()) {
    if (!is_story_kind(node.kind)) continue;
    ++total;
    const Node *hit = candidate.find(id);
    if (hit && is_story_kind(hit->kind)) ++matched;
  }
  if (total == 0) throw ValidationError("goal graph has no story nodes");
  return static_cast<double>(matched) / static_cast<double>(total);
}

double inference_overlap_r2(std::span<const Node> inference_set,
                            const KnowledgeGraph &expanded_goal) {
  if (expanded_goal.empty()) throw ValidationError("expanded goal graph is empty");
  std::set<std::string_view> ids;
  for (const Node &n : inference_set) ids.insert(n.id);
  std::size_t matched = 0;
  for (const auto &[id, node] : expanded_goal.nodes()) {
    if (ids.count(id)) ++matched;
  }
  return static_cast<double>(matched) / static_cast<double>(expanded_goal.size());
}

KnowledgeGraph story_view(const CandidateExpansion &candidate) {
  KnowledgeGraph out(candidate.graph.label());
  for (const auto &[id, node] : candidate.graph.nodes()) {
    if (is_story_kind(node.kind)) out.insert_node(node);
  }
  out.insert_node(promote_to_story(candidate.seed));
  return out;
}

SimilarityMatrix normalize_similarity(SimilarityMatrix m) {
  bool negative = false;
  for (const auto &row : m) {
    for (double v : row) negative = negative || v < 0.0;
  }
  for (auto &row : m) {
    for (double &v : row) {
      if (negative) v = (1.0 + v) / 2.0;
      v = std::clamp(v, 0.0, 1.0);
    }
  }
  return m;
}

std::optional<Link> detect_link(std::span<const InferenceChain> story_chains,
                                std::span<const InferenceChain> goal_chains,
                                const EmbeddingSimilarityProvider &embed, double threshold) {
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    throw ValidationError("link threshold must lie in (0,1]");
  }
  const auto story_events = index_events(story_chains);
  const auto goal_events = index_events(goal_chains);
  if (story_events.empty() || goal_events.empty()) return std::nullopt;

  std::vector<std::string> a;
  std::vector<std::string> b;
  for (const auto &[text, hit] : story_events) a.push_back(text);
  for (const auto &[text, hit] : goal_events) b.push_back(text);
  const SimilarityMatrix sim = normalize_similarity(embed.similarity(a, b));
  if (sim.size() != a.size()) throw ProviderError("similarity matrix has wrong row count");

  // Rows and columns are in lexicographic order, so the first strict
  // maximum met is also the tie winner.
  std::optional<std::pair<std::size_t, std::size_t>> best;
  double best_value = -1.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sim[i].size() != b.size()) throw ProviderError("similarity matrix has wrong column count");
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (sim[i][j] > best_value) {
        best_value = sim[i][j];
        best = {i, j};
      }
    }
  }
  if (!best || best_value < threshold) return std::nullopt;

  const Hit sh = story_events.at(a[best->first]);
  const Hit gh = goal_events.at(b[best->second]);
  Link link;
  link.story_chain = story_chains[sh.chain];
  link.goal_chain = goal_chains[gh.chain];
  link.story_event = a[best->first];
  link.goal_event = b[best->second];
  link.similarity = best_value;
  link.path.push_back(link.story_chain.root);
  for (std::size_t h = 0; h <= sh.hop; ++h) link.path.push_back(link.story_chain.hops[h].event);
  for (std::size_t h = gh.hop; h-- > 0;) link.path.push_back(link.goal_chain.hops[h].event);
  link.path.push_back(link.goal_chain.root);
  return link;
}

ScoreBreakdown combined_score(const CandidateExpansion &candidate, const KnowledgeGraph &goal,
                              const KnowledgeGraph &expanded_goal, double alpha) {
  check_alpha(alpha);
  ScoreBreakdown s;
  s.alpha = alpha;
  s.r1 = entity_overlap_r1(story_view(candidate), goal);
  s.r2 = inference_overlap_r2(candidate.inference_set, expanded_goal);
  s.R = alpha * s.r1 + (1.0 - alpha) * s.r2;
  return s;
}

ScoreBreakdown combined_score(const CandidateExpansion &candidate, const KnowledgeGraph &goal,
                              const KnowledgeGraph &expanded_goal,
                              std::span<const InferenceChain> goal_chains,
                              const EmbeddingSimilarityProvider &embed, double alpha,
                              double link_threshold) {
  ScoreBreakdown s = combined_score(candidate, goal, expanded_goal, alpha);
  s.link = detect_link(candidate.chains, goal_chains, embed, link_threshold);
  if (s.link) s.R = 1.0;
  return s;
}

bool ranks_before(const ScoredCandidate &a, const ScoredCandidate &b) {
  return std::forward_as_tuple(b.score.R, b.score.r1, b.score.r2, a.seed_id, a.beam, a.index) <
         std::forward_as_tuple(a.score.R, a.score.r1, a.score.r2, b.seed_id, b.beam, b.index);
}

std::vector<ScoredCandidate> rank_candidates(std::vector<ScoredCandidate> scored) {
  std::sort(scored.begin(), scored.end(), ranks_before);
  return scored;
}

std::vector<ScoredCandidate> select_topk(std::vector<ScoredCandidate> scored, int k) {
  if (k < 1) throw ValidationError("beam width must be >= 1");
  scored = rank_candidates(std::move(scored));
  if (scored.size() > static_cast<std::size_t>(k)) scored.resize(k);
  return scored;
}

}  // namespace kgplot
