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

#include "kgplot/pipeline.h"

#include <algorithm>
#include <set>

#include "kgplot/error.h"
#include "kgplot/metrics.h"
#include "kgplot/text.h"

namespace kgplot {
namespace {

template <typename F>
auto staged(const char *stage, F &&fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const PipelineError &) {
    throw;
  } catch (const Error &e) {
    throw PipelineError(stage, e.what());
  }
}

int reason_rank(StopReason r) {
  switch (r) {
    case StopReason::kLinkConsumed: return 0;
    case StopReason::kGoalReached: return 1;
    case StopReason::kScoreThreshold: return 2;
    case StopReason::kMaxLength: return 3;
    case StopReason::kExhausted: return 4;
  }
  return 5;
}

void add_unique(std::vector<std::string> &list, const std::string &s) {
  if (std::find(list.begin(), list.end(), s) == list.end()) list.push_back(s);
}

void track_subjects(BeamState &beam, const AcquiredSentences &acquired) {
  for (const auto &sentence : acquired.subjects) {
    std::vector<std::string> names;
    for (const Node &n : sentence) {
      if (n.id.rfind("unknown_", 0) == 0 || n.kind != NodeKind::kStoryEntity) continue;
      add_unique(names, n.surface);
      add_unique(beam.characters, n.surface);
    }
    if (!names.empty()) beam.last_subjects = std::move(names);
  }
}

void diff_graphs(const KnowledgeGraph &before, const KnowledgeGraph &after, TraceRecord &rec) {
  for (const auto &[id, node] : after.nodes()) {
    const Node *old = before.find(id);
    if (!old || old->kind != node.kind) rec.nodes_added.push_back(id);
  }
  for (const Triple &t : after.edges()) {
    if (!before.edges().count(t)) rec.edges_added.push_back(t);
  }
}

// Finished beams first (by stop precedence), then by R; index keeps the
// order total.
void order_beams(std::vector<BeamState> &beams) {
  std::vector<std::size_t> idx(beams.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  auto key = [&](std::size_t i) {
    const BeamState &b = beams[i];
    return std::make_tuple(b.finished ? reason_rank(*b.finished) : 9, -b.R, i);
  };
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
  std::vector<BeamState> out;
  for (std::size_t i : idx) out.push_back(std::move(beams[i]));
  beams = std::move(out);
}

}  // namespace

PipelineConfig PipelineConfig::for_profile(std::string_view profile) {
  PipelineConfig c;
  if (profile == "roc" || profile == "ft") {
    c.max_length = 4;
  } else if (profile == "wp") {
    c.max_length = 5;
  } else {
    throw ValidationError("unknown profile '" + std::string(profile) + "'");
  }
  c.profile = std::string(profile);
  return c;
}

PipelineConfig PipelineConfig::from_json(const nlohmann::json &j, PipelineConfig c) {
  if (!j.is_object()) throw ValidationError("pipeline config must be a JSON object");
  try {
    for (const auto &[key, v] : j.items()) {
      if (key == "alpha") c.alpha = v.get<double>();
      else if (key == "topk") c.topk = v.get<int>();
      else if (key == "depth_story") c.depth_story = v.get<int>();
      else if (key == "depth_goal") c.depth_goal = v.get<int>();
      else if (key == "provider_beam") c.provider_beam = v.get<int>();
      else if (key == "fanout") c.fanout = v.get<int>();
      else if (key == "template_cap") c.template_cap = v.get<std::size_t>();
      else if (key == "link_threshold") c.link_threshold = v.get<double>();
      else if (key == "stop_threshold") c.stop_threshold = v.get<double>();
      else if (key == "max_length") c.max_length = v.get<int>();
      else if (key == "profile") c.profile = v.get<std::string>();
      else if (key == "append_goal_on_reach") c.append_goal_on_reach = v.get<bool>();
      else throw ValidationError("unknown config field '" + key + "'");
    }
  } catch (const nlohmann::json::exception &e) {
    throw ValidationError(std::string("bad config value: ") + e.what());
  }
  return c;
}

nlohmann::json PipelineConfig::to_json() const {
  return {{"alpha", alpha},
          {"topk", topk},
          {"depth_story", depth_story},
          {"depth_goal", depth_goal},
          {"provider_beam", provider_beam},
          {"fanout", fanout},
          {"template_cap", template_cap},
          {"link_threshold", link_threshold},
          {"stop_threshold", stop_threshold},
          {"max_length", max_length},
          {"profile", profile},
          {"append_goal_on_reach", append_goal_on_reach}};
}

void PipelineConfig::validate() const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ValidationError("alpha must lie in [0,1]");
  if (topk < 1) throw ValidationError("topk must be >= 1");
  expansion().validate();
  if (template_cap < 1) throw ValidationError("template cap must be >= 1");
  if (!(link_threshold > 0.0 && link_threshold <= 1.0)) {
    throw ValidationError("link threshold must lie in (0,1]");
  }
  if (!(stop_threshold >= 0.0 && stop_threshold <= 1.0)) {
    throw ValidationError("stop threshold must lie in [0,1]");
  }
  if (max_length < 1) throw ValidationError("max length must be >= 1");
  if (profile != "roc" && profile != "wp" && profile != "ft") {
    throw ValidationError("profile must be one of roc, wp, ft");
  }
}

ExpansionConfig PipelineConfig::expansion() const {
  return {depth_story, depth_goal, provider_beam, fanout};
}

GenerationConfig PipelineConfig::generation() const { return {template_cap}; }

void PipelineEnv::validate() const {
  providers.require_all();
  if (!store) throw ValidationError("concept store is not wired");
  if (!coref) throw ValidationError("coreference provider is not wired");
}

std::string_view to_string(StopReason reason) {
  switch (reason) {
    case StopReason::kGoalReached: return "GoalReached";
    case StopReason::kScoreThreshold: return "ScoreThreshold";
    case StopReason::kLinkConsumed: return "LinkConsumed";
    case StopReason::kMaxLength: return "MaxLength";
    case StopReason::kExhausted: return "Exhausted";
  }
  return "Exhausted";
}

nlohmann::json TraceRecord::to_json() const {
  nlohmann::json j = {{"step", step},
                      {"beam", beam},
                      {"parent", parent},
                      {"chosen_concept", chosen_concept},
                      {"track", track},
                      {"r1", score.r1},
                      {"r2", score.r2},
                      {"R", score.R}};
  if (score.link) j["link"] = score.link->to_json();
  j["sentence"] = sentence;
  nlohmann::json edges = nlohmann::json::array();
  for (const Triple &t : edges_added) edges.push_back({t.subject, t.relation, t.object});
  j["graph_delta"] = {{"nodes", nodes_added}, {"edges", std::move(edges)}};
  nlohmann::json cons = nlohmann::json::array();
  for (const ConsideredCandidate &c : considered) {
    cons.push_back({{"seed", c.seed}, {"track", to_string(c.track)}, {"score", c.score.to_json()}});
  }
  j["considered"] = std::move(cons);
  if (warning) j["warning"] = *warning;
  return j;
}

BeamState initial_beam(std::span<const std::string> sentences, const PipelineEnv &env) {
  if (sentences.empty()) throw ValidationError("prompt has no sentences");
  BeamState beam;
  beam.story.assign(sentences.begin(), sentences.end());
  beam.segment_start = beam.story.size();
  const AcquiredSentences acquired =
      staged("acquisition", [&] { return acquire(beam.story, 0, *env.providers.srl, *env.coref); });
  beam.graph = acquired.graph;
  track_subjects(beam, acquired);
  return beam;
}

GoalState prepare_goal(const std::string &goal, const PipelineConfig &config,
                       const PipelineEnv &env) {
  if (collapse_whitespace(goal).empty()) throw ValidationError("goal text is empty");
  GoalState state;
  state.text = goal;
  const std::vector<std::string> sentences = {goal};
  state.graph = staged("goal acquisition", [&] {
    return build_graph(sentences, *env.providers.srl, *env.coref);
  });
  if (state.graph.empty()) {
    throw PipelineError("goal acquisition", "goal '" + goal + "' yields an empty graph");
  }
  state.expanded = staged("goal expansion", [&] {
    return expand_goal(state.graph, goal, *env.store, *env.providers.events, config.expansion());
  });
  return state;
}

void append_sentence(BeamState &beam, const std::string &sentence, const PipelineEnv &env) {
  beam.story.push_back(sentence);
  const AcquiredSentences acquired = staged("acquisition", [&] {
    return acquire(beam.story, beam.story.size() - 1, *env.providers.srl, *env.coref);
  });
  beam.graph.insert_all(acquired.graph);
  track_subjects(beam, acquired);
}

std::vector<VerbalizedHop> verbalize_link(std::span<const std::string> events,
                                          const BeamState &beam, const PipelineConfig &config,
                                          const PipelineEnv &env) {
  BeamState work = beam;
  std::vector<VerbalizedHop> out;
  for (const std::string &event : events) {
    VerbalizedHop hop{event, "", std::nullopt};
    const auto subjects = subject_choices(work.last_subjects, work.characters);
    try {
      hop.sentence = generate_continuation(event, work.story, subjects, *env.providers.infill,
                                           *env.providers.scorer, config.generation())
                         .text;
    } catch (const Error &e) {
      const std::string subject = subjects.empty() ? "someone" : subjects.front().name;
      hop.sentence = "Then, " + subject + " " + collapse_whitespace(event) + ".";
      hop.warning = "verbalization of '" + event + "' failed: " + e.what();
    }
    append_sentence(work, hop.sentence, env);
    out.push_back(std::move(hop));
  }
  return out;
}

StoryResult run_from(BeamState start, const GoalState &goal, const PipelineConfig &config,
                     const PipelineEnv &env) {
  config.validate();
  env.validate();
  StoryResult result;

  const double r1_start = staged("scoring", [&] { return entity_overlap_r1(start.graph, goal.graph); });
  if (r1_start == 1.0) {
    start.finished = StopReason::kGoalReached;
    if (config.append_goal_on_reach) {
      append_sentence(start, finish_sentence(goal.text), env);
      result.goal_appended = true;
    }
    result.beams.push_back(std::move(start));
    result.stop_reason = StopReason::kGoalReached;
    return result;
  }

  const auto max_len = static_cast<std::size_t>(config.max_length);
  std::vector<BeamState> beams;
  beams.push_back(std::move(start));
  std::optional<StopReason> stop;

  while (!stop) {
    if (std::any_of(beams.begin(), beams.end(),
                    [&](const BeamState &b) { return b.generated() >= max_len; })) {
      stop = StopReason::kMaxLength;
      break;
    }

    std::vector<std::vector<CandidateExpansion>> candidates(beams.size());
    std::vector<std::vector<ConsideredCandidate>> considered(beams.size());
    std::vector<ScoredCandidate> scored;
    for (std::size_t b = 0; b < beams.size(); ++b) {
      candidates[b] = staged("expansion", [&] {
        return candidate_expansions(beams[b].graph, beams[b].story, *env.store,
                                    *env.providers.events, config.expansion());
      });
      for (std::size_t i = 0; i < candidates[b].size(); ++i) {
        const CandidateExpansion &c = candidates[b][i];
        ScoreBreakdown s = staged("scoring", [&] {
          return combined_score(c, goal.graph, goal.expanded.graph, goal.expanded.chains,
                                *env.providers.similarity, config.alpha, config.link_threshold);
        });
        considered[b].push_back({c.seed.id, c.track, s});
        scored.push_back({static_cast<int>(b), i, c.seed.id, std::move(s)});
      }
    }
    if (scored.empty()) {
      stop = StopReason::kExhausted;
      break;
    }

    const std::size_t n_scored = scored.size();
    std::vector<BeamState> next;
    for (const ScoredCandidate &sc : rank_candidates(std::move(scored))) {
      if (next.size() == static_cast<std::size_t>(config.topk)) break;
      const BeamState &parent = beams[sc.beam];
      const CandidateExpansion &cand = candidates[sc.beam][sc.index];
      ContinuationCandidate sentence;
      try {
        sentence = generate_continuation(cand.seed.surface, parent.story,
                                         subject_choices(parent.last_subjects, parent.characters),
                                         *env.providers.infill, *env.providers.scorer,
                                         config.generation());
      } catch (const GenerationError &) {
        continue;  // no sentence for this concept; the next ranked one backfills
      } catch (const ValidationError &) {
        continue;
      }

      BeamState nb = parent;
      nb.graph = cand.graph;
      nb.graph.insert_node(promote_to_story(cand.seed));
      append_sentence(nb, sentence.text, env);
      nb.choices.emplace_back(cand.seed.id, sc.score);
      nb.R = sc.score.R;

      const int beam_index = static_cast<int>(next.size());
      TraceRecord rec;
      rec.step = static_cast<int>(nb.generated());
      rec.beam = beam_index;
      rec.parent = sc.beam;
      rec.chosen_concept = cand.seed.id;
      rec.track = std::string(to_string(cand.track));
      rec.score = sc.score;
      rec.sentence = sentence.text;
      rec.considered = considered[sc.beam];
      diff_graphs(parent.graph, nb.graph, rec);
      result.trace.push_back(std::move(rec));

      if (sc.score.link) {
        const std::vector<std::string> &path = sc.score.link->path;
        std::vector<std::string> rest(path.begin() + std::min<std::size_t>(2, path.size()),
                                      path.end());
        const std::size_t room = max_len > nb.generated() ? max_len - nb.generated() : 0;
        const bool truncated = rest.size() > room;
        if (truncated) rest.resize(room);
        for (VerbalizedHop &hop : verbalize_link(rest, nb, config, env)) {
          const KnowledgeGraph before = nb.graph;
          nb.graph.insert_node(Node::story(hop.event, NodeKind::kStoryEvent));
          append_sentence(nb, hop.sentence, env);
          TraceRecord h;
          h.step = static_cast<int>(nb.generated());
          h.beam = beam_index;
          h.parent = beam_index;
          h.chosen_concept = normalize_id(hop.event);
          h.track = "link";
          h.score = sc.score;
          h.sentence = hop.sentence;
          h.warning = std::move(hop.warning);
          diff_graphs(before, nb.graph, h);
          result.trace.push_back(std::move(h));
        }
        nb.finished = truncated ? StopReason::kMaxLength : StopReason::kLinkConsumed;
      } else if (staged("scoring", [&] { return entity_overlap_r1(nb.graph, goal.graph); }) ==
                 1.0) {
        nb.finished = StopReason::kGoalReached;
      } else if (sc.score.R >= config.stop_threshold) {
        nb.finished = StopReason::kScoreThreshold;
      }
      next.push_back(std::move(nb));
    }

    if (next.empty()) {
      stop = StopReason::kExhausted;
      break;
    }
    beams = std::move(next);
    ++result.steps;
    result.candidates_per_step.push_back(n_scored);
    result.width_per_step.push_back(beams.size());
    if (std::any_of(beams.begin(), beams.end(), [](const BeamState &b) { return b.finished; })) {
      order_beams(beams);
      stop = *beams.front().finished;
    }
  }

  order_beams(beams);
  result.stop_reason = *stop;
  if (config.append_goal_on_reach &&
      (*stop == StopReason::kGoalReached || *stop == StopReason::kScoreThreshold)) {
    append_sentence(beams.front(), finish_sentence(goal.text), env);
    result.goal_appended = true;
  }
  result.beams = std::move(beams);
  return result;
}

StoryResult run(const std::string &prompt, const std::string &goal,
                const PipelineConfig &config, const PipelineEnv &env) {
  config.validate();
  env.validate();
  const std::vector<std::string> sentences = split_sentences(prompt);
  if (sentences.empty()) throw ValidationError("prompt text is empty");
  BeamState start = initial_beam(sentences, env);
  const GoalState goal_state = prepare_goal(goal, config, env);
  return run_from(std::move(start), goal_state, config, env);
}

ChainedResult run_goals(const std::string &prompt, std::span<const std::string> goals,
                        const PipelineConfig &config, const PipelineEnv &env) {
  config.validate();
  env.validate();
  if (goals.empty()) throw ValidationError("goal list is empty");
  const std::vector<std::string> sentences = split_sentences(prompt);
  if (sentences.empty()) throw ValidationError("prompt text is empty");
  BeamState state = initial_beam(sentences, env);
  ChainedResult out;
  for (std::size_t g = 0; g < goals.size(); ++g) {
    const GoalState goal_state = prepare_goal(goals[g], config, env);
    state.segment_start = state.story.size();
    state.finished.reset();
    state.R = 0.0;
    StoryResult seg = run_from(state, goal_state, config, env);
    state = seg.best();
    if (g + 1 < goals.size() && !seg.goal_appended) {
      append_sentence(state, finish_sentence(goals[g]), env);
    }
    out.segments.push_back(std::move(seg));
  }
  out.story = state.story;
  return out;
}

void write_trace(std::ostream &out, std::span<const TraceRecord> trace) {
  for (const TraceRecord &r : trace) out << r.to_json().dump() << '\n';
}

}  // namespace kgplot
