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

#ifndef KGPLOT_ABLATION_H_
#define KGPLOT_ABLATION_H_

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "kgplot/pipeline.h"

namespace kgplot {

struct PromptGoal {
  std::string prompt;
  std::string goal;
};

// JSON array of {"prompt": str, "goal": str}.
std::vector<PromptGoal> load_pairs(const std::filesystem::path &path);

struct AblationRow {
  double alpha = 0.0;
  std::vector<int> lengths;
  double mean = 0.0;
  double stddev = 0.0;  // population
};

inline constexpr int kAblationLengthCap = 10;

// Generated sentences needed before the goal is hit or R reaches the stop
// threshold. Runs that never get there count as the cap.
int length_to_goal(const StoryResult &result, int cap);

std::vector<AblationRow> run_ablation(std::span<const PromptGoal> pairs,
                                      std::span<const double> alphas, PipelineConfig base,
                                      const PipelineEnv &env, int cap = kAblationLengthCap);

// Two-column-model table: "Model | alpha | Avg. len", one row per alpha,
// the model name on the first row only, cells as "mean ± std".
std::string format_ablation_table(std::span<const AblationRow> rows,
                                  const std::string &model = "Full");

}  // namespace kgplot

#endif  // KGPLOT_ABLATION_H_
