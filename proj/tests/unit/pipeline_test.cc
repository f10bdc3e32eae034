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

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "fixture_world.h"
#include "kgplot/error.h"
#include "kgplot/fixtures.h"
#include "kgplot/pipeline.h"

namespace kgplot {
namespace {

struct World {
  World(FixtureTables tables, ConceptStore s) : backend(std::move(tables)), store(std::move(s)) {}

  PipelineEnv env() const { return {backend.providers(), &store, &coref}; }

  FixtureBackend backend;
  ConceptStore store;
  RuleCorefProvider coref;
};

World florida() {
  return World(load_fixtures(world::fixture_path("florida/bundle.jsonl")),
               ConceptStore::load(world::fixture_path("florida/concepts.tsv")));
}

std::string trace_text(const StoryResult &r) {
  std::ostringstream out;
  write_trace(out, r.trace);
  return out.str();
}

std::string read_file(const std::string &path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

TEST(FloridaPipeline, LinkConsumedWithGoldenTrace) {
  const World w = florida();
  const auto start = std::chrono::steady_clock::now();
  const StoryResult r = run("Jenny lived in Florida.", "enjoy sunshine", PipelineConfig{}, w.env());
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  EXPECT_LT(secs, 1.0);

  EXPECT_EQ(r.stop_reason, StopReason::kLinkConsumed);
  EXPECT_EQ(r.best().story,
            (std::vector<std::string>{"Jenny lived in Florida.", "Jenny often swam in the ocean.",
                                      "Jenny went to the beach.", "Jenny enjoyed the sunshine."}));
  ASSERT_FALSE(r.best().choices.empty());
  const ScoreBreakdown &s = r.best().choices.front().second;
  ASSERT_TRUE(s.link);
  EXPECT_EQ(s.link->path, (std::vector<std::string>{"Jenny lived in Florida.", "swim",
                                                    "go to beach", "enjoy sunshine"}));
  EXPECT_DOUBLE_EQ(s.R, 1.0);

  const std::string trace = trace_text(r);
  const std::string golden_path = world::data_path("florida_trace.jsonl");
  if (std::getenv("KGPLOT_UPDATE_GOLDENS")) std::ofstream(golden_path) << trace;
  EXPECT_EQ(trace, read_file(golden_path));
  const StoryResult again =
      run("Jenny lived in Florida.", "enjoy sunshine", PipelineConfig{}, w.env());
  EXPECT_EQ(trace_text(again), trace);
}

TEST(FloridaPipeline, LinkTruncatedByLengthCap) {
  const World w = florida();
  PipelineConfig cfg;
  cfg.max_length = 2;
  const StoryResult r = run("Jenny lived in Florida.", "enjoy sunshine", cfg, w.env());
  EXPECT_EQ(r.stop_reason, StopReason::kMaxLength);
  EXPECT_EQ(r.best().generated(), 2u);
}

TEST(Pipeline, ExhaustedWhenNothingToInfer) {
  FixtureTables t;
  world::add_srl(t, "Jenny lived in Florida.", "EXIST_LIVE",
                 {{"Theme", "Jenny"}, {"Location", "Florida"}});
  world::add_srl(t, "enjoy sunshine", "LIKE", {{"Stimulus", "sunshine"}});
  const World w(t, ConceptStore{});
  const StoryResult r = run("Jenny lived in Florida.", "enjoy sunshine", PipelineConfig{}, w.env());
  EXPECT_EQ(r.stop_reason, StopReason::kExhausted);
  EXPECT_EQ(r.best().story, std::vector<std::string>{"Jenny lived in Florida."});
  EXPECT_TRUE(r.trace.empty());
  EXPECT_EQ(r.steps, 0);
}

TEST(Pipeline, GoalReachedBeforeGeneration) {
  const World w = florida();
  PipelineConfig cfg;
  const StoryResult r = run("Jenny lived in Florida.", "Jenny lived in Florida.", cfg, w.env());
  EXPECT_EQ(r.stop_reason, StopReason::kGoalReached);
  EXPECT_EQ(r.steps, 0);
  EXPECT_EQ(r.best().story.size(), 1u);
  EXPECT_FALSE(r.goal_appended);

  cfg.append_goal_on_reach = true;
  const StoryResult a = run("Jenny lived in Florida.", "Jenny lived in Florida.", cfg, w.env());
  EXPECT_TRUE(a.goal_appended);
  EXPECT_EQ(a.best().story.size(), 2u);
}

TEST(Pipeline, EmptyGoalGraphIsPipelineError) {
  const World w = florida();
  try {
    run("Jenny lived in Florida.", "something unparsed", PipelineConfig{}, w.env());
    FAIL() << "expected PipelineError";
  } catch (const PipelineError &e) {
    EXPECT_EQ(e.stage(), "goal acquisition");
  }
  EXPECT_THROW(run("", "enjoy sunshine", PipelineConfig{}, w.env()), ValidationError);
  EXPECT_THROW(run("Jenny lived in Florida.", " ", PipelineConfig{}, w.env()), ValidationError);
}

TEST(Pipeline, MissingProviderRejected) {
  World w = florida();
  PipelineEnv env = w.env();
  env.providers.scorer = nullptr;
  EXPECT_THROW(run("Jenny lived in Florida.", "enjoy sunshine", PipelineConfig{}, env),
               ValidationError);
}

TEST(Pipeline, MultiGoalChainsSegments) {
  const World w = florida();
  const std::vector<std::string> goals = {"enjoy sunshine", "enjoy sunshine"};
  const ChainedResult r = run_goals("Jenny lived in Florida.", goals, PipelineConfig{}, w.env());
  ASSERT_EQ(r.segments.size(), 2u);
  EXPECT_EQ(r.segments[0].stop_reason, StopReason::kLinkConsumed);
  EXPECT_EQ(r.segments[1].stop_reason, StopReason::kGoalReached);
  EXPECT_EQ(r.story, (std::vector<std::string>{
                         "Jenny lived in Florida.", "Jenny often swam in the ocean.",
                         "Jenny went to the beach.", "Jenny enjoyed the sunshine.",
                         "Enjoy sunshine."}));
  EXPECT_THROW(run_goals("Jenny lived in Florida.", {}, PipelineConfig{}, w.env()),
               ValidationError);
}

class FailingInfill final : public InfillProvider {
 public:
  InfillResult infill(std::string_view, std::string_view) const override { return {}; }
};

TEST(Pipeline, VerbalizeFallsBackWithWarning) {
  const World w = florida();
  PipelineEnv env = w.env();
  FailingInfill infill;
  env.providers.infill = &infill;
  const std::vector<std::string> prompt = {"Jenny lived in Florida."};
  BeamState beam = initial_beam(prompt, env);
  beam.last_subjects.clear();
  beam.characters.clear();
  const std::vector<std::string> events = {"go to beach"};
  const auto hops = verbalize_link(events, beam, PipelineConfig{}, env);
  ASSERT_EQ(hops.size(), 1u);
  EXPECT_EQ(hops[0].sentence, "Then, someone go to beach.");
  EXPECT_TRUE(hops[0].warning);
}

TEST(Config, Profiles) {
  EXPECT_EQ(PipelineConfig::for_profile("roc").max_length, 4);
  EXPECT_EQ(PipelineConfig::for_profile("ft").max_length, 4);
  EXPECT_EQ(PipelineConfig::for_profile("wp").max_length, 5);
  EXPECT_THROW(PipelineConfig::for_profile("xx"), ValidationError);
  EXPECT_EQ(PipelineConfig{}.topk, 3);
}

TEST(Config, JsonOverlay) {
  const PipelineConfig c =
      PipelineConfig::from_json({{"alpha", 0.9}, {"topk", 5}}, PipelineConfig::for_profile("wp"));
  EXPECT_DOUBLE_EQ(c.alpha, 0.9);
  EXPECT_EQ(c.topk, 5);
  EXPECT_EQ(c.max_length, 5);
  EXPECT_THROW(PipelineConfig::from_json({{"alhpa", 0.9}}, c), ValidationError);
  EXPECT_THROW(PipelineConfig::from_json({{"topk", "many"}}, c), ValidationError);
  EXPECT_EQ(PipelineConfig::from_json(c.to_json(), PipelineConfig{}).to_json(), c.to_json());
  PipelineConfig bad = c;
  bad.alpha = 1.5;
  EXPECT_THROW(bad.validate(), ValidationError);
}

TEST(StopReasons, Names) {
  EXPECT_EQ(to_string(StopReason::kLinkConsumed), "LinkConsumed");
  EXPECT_EQ(to_string(StopReason::kGoalReached), "GoalReached");
  EXPECT_EQ(to_string(StopReason::kScoreThreshold), "ScoreThreshold");
  EXPECT_EQ(to_string(StopReason::kMaxLength), "MaxLength");
  EXPECT_EQ(to_string(StopReason::kExhausted), "Exhausted");
}

// Beam width, length caps and early stopping over random fixture worlds.
TEST(PipelineProperty, BeamInvariants) {
  std::mt19937 rng(59);
  std::uniform_int_distribution<int> k(1, 4);
  std::uniform_real_distribution<double> alpha(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    world::PlanningWorld pw = world::random_planning_world(rng);
    world::add_random_event_entities(pw.tables, rng, 0.1);
    const World w(pw.tables, world::make_store(pw.edges));
    PipelineConfig cfg = PipelineConfig::for_profile(trial % 2 ? "wp" : "roc");
    cfg.topk = k(rng);
    cfg.alpha = alpha(rng);
    const StoryResult r = run(pw.prompt, pw.goal, cfg, w.env());
    const std::size_t K = static_cast<std::size_t>(cfg.topk);

    ASSERT_EQ(r.width_per_step.size(), static_cast<std::size_t>(r.steps));
    for (std::size_t s = 0; s < r.width_per_step.size(); ++s) {
      EXPECT_EQ(r.width_per_step[s], std::min(K, r.candidates_per_step[s]))
          << "trial " << trial << " step " << s;
    }
    for (const BeamState &b : r.beams) {
      EXPECT_LE(b.generated(), static_cast<std::size_t>(cfg.max_length));
    }
    // No record before the last step may satisfy a stop condition.
    for (const TraceRecord &rec : r.trace) {
      if (rec.track == "link" || rec.step >= r.steps) continue;
      EXPECT_LT(rec.score.R, cfg.stop_threshold) << "trial " << trial;
      EXPECT_FALSE(rec.score.link);
    }
    const BeamState &best = r.best();
    switch (r.stop_reason) {
      case StopReason::kScoreThreshold:
        EXPECT_GE(best.R, cfg.stop_threshold);
        EXPECT_EQ(best.generated(), best.choices.size());
        break;
      case StopReason::kGoalReached:
        EXPECT_EQ(best.generated(), best.choices.size());
        break;
      case StopReason::kMaxLength:
        EXPECT_EQ(best.generated(), static_cast<std::size_t>(cfg.max_length));
        break;
      default:
        break;
    }
    if (r.stop_reason != StopReason::kMaxLength && r.stop_reason != StopReason::kExhausted) {
      EXPECT_TRUE(best.finished);
    }
  }
}

}  // namespace
}  // namespace kgplot
