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

#include <random>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "kgplot/concept_store.h"
#include "kgplot/expansion.h"
#include "kgplot/generation.h"
#include "kgplot/metrics.h"
#include "kgplot/scoring.h"

namespace {

using namespace kgplot;

std::vector<std::string> vocabulary(int n) {
  std::vector<std::string> v;
  for (int i = 0; i < n; ++i) v.push_back("w" + std::to_string(i));
  return v;
}

void BM_CombinedScore(benchmark::State &state) {
  const int n = static_cast<int>(state.range(0));
  const auto words = vocabulary(2 * n);
  CandidateExpansion c;
  KnowledgeGraph goal, expanded;
  for (int i = 0; i < n; ++i) {
    c.graph.insert_node(Node::story(words[i]));
    goal.insert_node(Node::story(words[i + n / 2]));
    const Node inf = Node::inferred(words[n + i], NodeKind::kInferredEntity, 1, "HasA");
    c.inference_set.push_back(inf);
    expanded.insert_node(Node::inferred(words[n + (i * 7) % n], NodeKind::kInferredEntity, 1, "HasA"));
  }
  c.seed = c.inference_set.front();
  for (const auto &[id, node] : goal.nodes()) expanded.insert_node(node);
  for (auto _ : state) benchmark::DoNotOptimize(combined_score(c, goal, expanded, 0.5));
}
BENCHMARK(BM_CombinedScore)->Arg(12)->Arg(64)->Arg(256);

void BM_MakeTemplates(benchmark::State &state) {
  EventParts p;
  p.verbs = {"went"};
  p.nouns = {"beach"};
  if (state.range(0) > 1) p.adjectives = {"sunny"};
  std::vector<SubjectChoice> subjects;
  for (int i = 0; i < state.range(0); ++i) {
    subjects.push_back({SubjectChoice::Kind::kPriorSubject, "N" + std::to_string(i)});
  }
  for (auto _ : state) {
    auto ts = make_templates(p, subjects);
    benchmark::DoNotOptimize(downsample_templates(ts, 512));
  }
}
BENCHMARK(BM_MakeTemplates)->Arg(1)->Arg(2)->Arg(3);

void BM_ExpandEntity(benchmark::State &state) {
  std::mt19937 rng(5);
  const auto words = vocabulary(200);
  ConceptStore store;
  std::uniform_int_distribution<int> pick(0, 199);
  for (int i = 0; i < 2000; ++i) store.add("AtLocation", words[pick(rng)], words[pick(rng)], 1.0);
  const int depth = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(expand_entity(Node::story(words[0]), store, depth, 5));
  }
}
BENCHMARK(BM_ExpandEntity)->Arg(1)->Arg(2)->Arg(3);

void BM_Bleu(benchmark::State &state) {
  std::mt19937 rng(9);
  const auto words = vocabulary(50);
  auto sentence = [&](int n) {
    std::string s;
    for (int i = 0; i < n; ++i) s += (i ? " " : "") + words[rng() % words.size()];
    return s;
  };
  const int len = static_cast<int>(state.range(0));
  const std::string hyp = sentence(len);
  const std::vector<std::string> refs = {sentence(len), sentence(len)};
  std::vector<std::string> story;
  for (int i = 0; i < 5; ++i) story.push_back(sentence(len / 5 + 1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(bleu_n(hyp, refs, 3));
    benchmark::DoNotOptimize(self_bleu(story, 2));
    benchmark::DoNotOptimize(rouge_l(hyp, refs[0]));
  }
}
BENCHMARK(BM_Bleu)->Arg(20)->Arg(100);

}  // namespace

BENCHMARK_MAIN();
