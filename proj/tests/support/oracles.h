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

#ifndef KGPLOT_TESTS_SUPPORT_ORACLES_H_
#define KGPLOT_TESTS_SUPPORT_ORACLES_H_

// Slow, obviously-correct reference computations the library is checked
// against. None of them call the code they are used to test.

#include <cstddef>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "kgplot/generation.h"
#include "kgplot/graph.h"

namespace kgplot::oracle {

struct RawEdge {
  std::string relation;
  std::string head;
  std::string tail;
  double weight = 1.0;
};

// (child id, relation) in rank order.
using Ranked = std::vector<std::pair<std::string, std::string>>;

// Heaviest edge per tail, heaviest first (ties: tail, then relation), self
// loops removed, first `fanout` kept.
Ranked store_children(const std::vector<RawEdge> &edges, const std::string &head, int fanout);

struct WalkNode {
  int depth = 0;  // hops from the seed
  std::string parent;
  std::string relation;
  std::vector<int> ranks;  // best (lexicographically smallest) shortest walk
};

struct WalkClosure {
  std::map<std::string, WalkNode> nodes;  // includes the seed at depth 0
  std::vector<std::vector<std::string>> chains;  // seed-excluded paths to leaves
};

// Enumerates every walk of up to `depth` hops and keeps, for each node,
// the shortest walk with the smallest rank vector.
WalkClosure walk_closure(const std::string &seed, int depth,
                         const std::function<Ranked(const std::string &)> &children,
                         const std::set<std::string> &exclude);

// Pairwise count of goal story nodes that equal some candidate story node.
double r1(const std::vector<Node> &candidate, const std::vector<Node> &goal);
// Pairwise count of expanded-goal nodes equal to some inference node.
double r2(const std::vector<Node> &inference, const std::vector<Node> &expanded_goal);

// Every template as (rendered text, per-slot runs) from a recursive walk
// over the slot sequence.
struct TemplateShape {
  std::string rendered;
  std::vector<int> runs;
};
std::vector<TemplateShape> enumerate_templates(const EventParts &parts,
                                               const std::vector<std::string> &subjects);
std::size_t closed_form_count(std::size_t verbs, bool adjectives, bool nouns,
                              std::size_t subjects);

// Index of the best candidate by a plain linear scan.
std::size_t argmax_continuation(const std::vector<ContinuationCandidate> &candidates);

}  // namespace kgplot::oracle

#endif  // KGPLOT_TESTS_SUPPORT_ORACLES_H_
