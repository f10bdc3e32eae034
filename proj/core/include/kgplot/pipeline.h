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

#ifndef KGPLOT_PIPELINE_H_
#define KGPLOT_PIPELINE_H_

#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "kgplot/acquisition.h"
#include "kgplot/concept_store.h"
#include "kgplot/expansion.h"
#include "kgplot/generation.h"
#include "kgplot/graph.h"
#include "kgplot/providers.h"
#include "kgplot/scoring.h"

namespace kgplot {

struct PipelineConfig {
  double alpha = 0.5;
  int topk = 3;
  int depth_story = 2;
  int depth_goal = 2;
  int provider_beam = 5;
  int fanout = 5;
  std::size_t template_cap = 512;
  double link_threshold = 0.8;
  double stop_threshold = 0.8;
  int max_length = 4;
  std::string profile = "roc";
  bool append_goal_on_reach = false;

  // Defaults for a dataset profile: roc and ft cap stories at 4 generated
  // sentences, wp at 5.
  static PipelineConfig for_profile(std::string_view profile);
  // Overlays the fields present in `j` onto `base`; unknown keys are errors.
  static PipelineConfig from_json(const nlohmann::json &j, PipelineConfig base);
  nlohmann::json to_json() const;

  void validate() const;
  ExpansionConfig expansion() const;
  GenerationConfig generation() const;
};

// Everything the planner talks to. Only the pointers are held.
struct PipelineEnv {
  ProviderSet providers;
  const ConceptStore *store = nullptr;
  const CorefProvider *coref = nullptr;

  void validate() const;
};

enum class StopReason { kGoalReached, kScoreThreshold, kLinkConsumed, kMaxLength, kExhausted };
std::string_view to_string(StopReason reason);

struct BeamState {
  std::vector<std::string> story;
  KnowledgeGraph graph;
  std::size_t segment_start = 0;  // sentences before this index are given text
  // Surfaces of the last sentence's subjects and of every earlier character.
  std::vector<std::string> last_subjects;
  std::vector<std::string> characters;
  std::vector<std::pair<std::string, ScoreBreakdown>> choices;
  std::optional<StopReason> finished;
  double R = 0.0;

  std::size_t generated() const { return story.size() - segment_start; }
};

struct GoalState {
  std::string text;
  KnowledgeGraph graph;
  ExpandedGoal expanded;
};

struct ConsideredCandidate {
  std::string seed;
  Track track = Track::kEntity;
  ScoreBreakdown score;
};

struct TraceRecord {
  int step = 0;
  int beam = 0;
  int parent = 0;
  std::string chosen_concept;
  std::string track;
  ScoreBreakdown score;
  std::string sentence;
  std::vector<std::string> nodes_added;
  std::vector<Triple> edges_added;
  std::vector<ConsideredCandidate> considered;
  std::optional<std::string> warning;

  nlohmann::json to_json() const;
};

struct StoryResult {
  std::vector<BeamState> beams;  // finished beams first, then by R
  StopReason stop_reason = StopReason::kExhausted;
  std::vector<TraceRecord> trace;
  bool goal_appended = false;
  int steps = 0;
  // Per step: candidates scored across all beams, and beams kept.
  std::vector<std::size_t> candidates_per_step;
  std::vector<std::size_t> width_per_step;

  const BeamState &best() const { return beams.front(); }
};

// Reader model for a list of sentences; subjects are tracked for templates.
BeamState initial_beam(std::span<const std::string> sentences, const PipelineEnv &env);

GoalState prepare_goal(const std::string &goal, const PipelineConfig &config,
                       const PipelineEnv &env);

// Appends one sentence and folds its acquired triples into the graph.
void append_sentence(BeamState &beam, const std::string &sentence, const PipelineEnv &env);

// Sentences for each event on the link path after the matched story seed.
// Failures fall back to "Then, <subject> <event>." and set the warning.
struct VerbalizedHop {
  std::string event;
  std::string sentence;
  std::optional<std::string> warning;
};
std::vector<VerbalizedHop> verbalize_link(std::span<const std::string> events,
                                          const BeamState &beam, const PipelineConfig &config,
                                          const PipelineEnv &env);

StoryResult run(const std::string &prompt, const std::string &goal,
                const PipelineConfig &config, const PipelineEnv &env);
StoryResult run_from(BeamState start, const GoalState &goal, const PipelineConfig &config,
                     const PipelineEnv &env);

struct ChainedResult {
  std::vector<StoryResult> segments;
  std::vector<std::string> story;
};

// One segment per goal; each segment starts from the previous best story
// with the previous goal appended.
ChainedResult run_goals(const std::string &prompt, std::span<const std::string> goals,
                        const PipelineConfig &config, const PipelineEnv &env);

void write_trace(std::ostream &out, std::span<const TraceRecord> trace);

}  // namespace kgplot

#endif  // KGPLOT_PIPELINE_H_
