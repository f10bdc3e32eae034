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

#include "kgplot/ablation.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "kgplot/error.h"

namespace kgplot {

std::vector<PromptGoal> load_pairs(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw LoadError(path.string(), 0, "cannot open dataset");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception &e) {
    throw LoadError(path.string(), 0, e.what());
  }
  if (!j.is_array()) throw LoadError(path.string(), 0, "dataset must be a JSON array");
  std::vector<PromptGoal> out;
  for (const auto &item : j) {
    if (!item.is_object() || !item.contains("prompt") || !item.contains("goal")) {
      throw LoadError(path.string(), 0, "dataset entries need prompt and goal");
    }
    out.push_back({item["prompt"].get<std::string>(), item["goal"].get<std::string>()});
  }
  return out;
}

int length_to_goal(const StoryResult &result, int cap) {
  switch (result.stop_reason) {
    case StopReason::kGoalReached:
    case StopReason::kScoreThreshold:
    case StopReason::kLinkConsumed:
      return std::min(static_cast<int>(result.best().generated()), cap);
    default:
      return cap;
  }
}

std::vector<AblationRow> run_ablation(std::span<const PromptGoal> pairs,
                                      std::span<const double> alphas, PipelineConfig base,
                                      const PipelineEnv &env, int cap) {
  if (pairs.empty()) throw ValidationError("ablation dataset is empty");
  if (alphas.empty()) throw ValidationError("no alpha values given");
  base.max_length = cap;
  std::vector<AblationRow> rows;
  for (double alpha : alphas) {
    PipelineConfig config = base;
    config.alpha = alpha;
    AblationRow row;
    row.alpha = alpha;
    for (const PromptGoal &p : pairs) {
      row.lengths.push_back(length_to_goal(run(p.prompt, p.goal, config, env), cap));
    }
    double sum = 0.0;
    for (int n : row.lengths) sum += n;
    row.mean = sum / static_cast<double>(row.lengths.size());
    double var = 0.0;
    for (int n : row.lengths) var += (n - row.mean) * (n - row.mean);
    row.stddev = std::sqrt(var / static_cast<double>(row.lengths.size()));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string format_ablation_table(std::span<const AblationRow> rows, const std::string &model) {
  std::ostringstream out;
  out << "Model | alpha | Avg. len\n";
  char buf[96];
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::snprintf(buf, sizeof buf, " | alpha=%.2f | %.2f ± %.2f\n", rows[i].alpha,
                  rows[i].mean, rows[i].stddev);
    out << (i == 0 ? model : std::string()) << buf;
  }
  return out.str();
}

}  // namespace kgplot
