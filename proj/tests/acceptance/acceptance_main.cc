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

// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failures, so ctest goes red if any line does.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <regex>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.h"
#include "fixture_world.h"
#include "kgplot/ablation.h"
#include "kgplot/acquisition.h"
#include "kgplot/expansion.h"
#include "kgplot/metrics.h"
#include "kgplot/pipeline.h"
#include "kgplot/scoring.h"
#include "kgplot/text.h"
#include "oracles.h"

namespace kgplot {
namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

// Collects the first few mismatches of one criterion.
class Verdict {
 public:
  void expect(bool ok, const std::string &what) {
    if (ok) return;
    if (failures_.size() < 5) failures_.push_back(what);
    ++count_;
  }
  bool ok() const { return count_ == 0; }
  std::string summary() const {
    std::string s = std::to_string(count_) + " mismatch(es)";
    for (const auto &f : failures_) s += "; " + f;
    return s;
  }

 private:
  std::vector<std::string> failures_;
  int count_ = 0;
};

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string trace_text(const StoryResult &r) {
  std::ostringstream out;
  write_trace(out, r.trace);
  return out.str();
}

void scoring_oracle(Verdict &v) {
  std::mt19937 rng(101);
  const auto start = Clock::now();
  for (int trial = 0; trial < 200; ++trial) {
    const world::ScorePair p = world::random_score_pair(rng);
    std::vector<Node> cand_view, goal_nodes, eg_nodes;
    for (const auto &[id, n] : p.candidate.graph.nodes()) {
      if (is_story_kind(n.kind)) cand_view.push_back(n);
    }
    cand_view.push_back(promote_to_story(p.candidate.seed));
    for (const auto &[id, n] : p.goal.nodes()) goal_nodes.push_back(n);
    for (const auto &[id, n] : p.expanded_goal.nodes()) eg_nodes.push_back(n);
    v.expect(goal_nodes.size() <= 12 && cand_view.size() <= 13, "graph too large");
    const double r1 = oracle::r1(cand_view, goal_nodes);
    const double r2 = oracle::r2(p.candidate.inference_set, eg_nodes);
    const ScoreBreakdown s = combined_score(p.candidate, p.goal, p.expanded_goal, 0.5);
    const std::string at = "trial " + std::to_string(trial);
    v.expect(std::abs(s.r1 - r1) <= 1e-12, at + " r1");
    v.expect(std::abs(s.r2 - r2) <= 1e-12, at + " r2");
    v.expect(std::abs(s.R - (0.5 * r1 + 0.5 * r2)) <= 1e-12, at + " R");
  }
  const double secs = seconds_since(start);
  v.expect(secs < 5.0, "took " + std::to_string(secs) + " s");
}

void affine_and_link(Verdict &v) {
  std::mt19937 rng(103);
  for (int trial = 0; trial < 50; ++trial) {
    const world::ScorePair p = world::random_score_pair(rng);
    const double r1 = entity_overlap_r1(story_view(p.candidate), p.goal);
    const double r2 = inference_overlap_r2(p.candidate.inference_set, p.expanded_goal);
    for (double alpha : {0.0, 0.25, 0.5, 0.9, 1.0}) {
      const ScoreBreakdown s = combined_score(p.candidate, p.goal, p.expanded_goal, alpha);
      v.expect(std::abs(s.R - (alpha * r1 + (1 - alpha) * r2)) <= 1e-12,
               "alpha " + std::to_string(alpha));
    }
  }

  // A chain whose last event matches a goal chain event forces R to 1.
  FixtureTables t;
  t.similarity[{"go to beach", "walk to beach"}] = 0.9;
  const FixtureBackend embed(t);
  KnowledgeGraph goal;
  goal.insert_node(Node::story("a"));
  goal.insert_node(Node::story("b"));
  CandidateExpansion c;
  c.seed = Node::inferred("x", NodeKind::kInferredEvent, 1, "xWant");
  c.graph.insert_node(Node::story("y"));
  c.inference_set.push_back(c.seed);
  c.chains = {InferenceChain{"root", {{"walk to beach", "xWant"}}}};
  const std::vector<InferenceChain> goal_chains = {{"g", {{"go to beach", "xNeed"}}}};
  for (double alpha : {0.0, 0.5, 1.0}) {
    const ScoreBreakdown s = combined_score(c, goal, goal, goal_chains, embed, alpha, 0.8);
    v.expect(s.link.has_value() && s.R == 1.0, "link did not force R = 1");
  }
  t.similarity[{"go to beach", "walk to beach"}] = 0.7;
  const FixtureBackend weak(t);
  const ScoreBreakdown s = combined_score(c, goal, goal, goal_chains, weak, 0.5, 0.8);
  v.expect(!s.link && s.R < 1.0, "sub-threshold similarity linked");
}

void bfs_equivalence(Verdict &v) {
  std::mt19937 rng(107);
  std::uniform_int_distribution<int> depth(1, 4), fanout(1, 4), beam(1, 3);
  for (int trial = 0; trial < 100; ++trial) {
    const auto edges = world::random_edges(rng, 50);
    const ConceptStore store = world::make_store(edges);
    const int d = depth(rng), f = fanout(rng);
    const std::string &seed = world::entity_words()[trial % world::entity_words().size()];
    const Closure got = expand_entity(Node::story(seed), store, d, f);
    const oracle::WalkClosure want = oracle::walk_closure(
        seed, d, [&](const std::string &h) { return oracle::store_children(edges, h, f); }, {});
    std::map<std::string, int> got_depths, want_depths;
    for (const Node &n : got.nodes) {
      got_depths[n.id] = n.depth;
      v.expect(n.depth <= d, "entity depth bound");
    }
    for (const auto &[id, wn] : want.nodes) want_depths[id] = wn.depth;
    v.expect(got_depths == want_depths, "entity closure, trial " + std::to_string(trial));
    std::map<std::string, int> out_degree;
    for (const Triple &t : got.edges) ++out_degree[t.subject];
    for (const auto &[head, k] : out_degree) v.expect(k <= f, "fanout bound");

    FixtureTables tables;
    world::add_random_events(tables, rng, 3);
    const FixtureBackend backend(tables);
    const int ed = std::min(d, 3), b = beam(rng);
    const std::string &phrase = world::event_phrases()[trial % world::event_phrases().size()];
    const Node ev = Node::inferred(phrase, NodeKind::kInferredEvent, 1, "xWant");
    const Closure egot = expand_event(ev, backend, store, ed, b, f);
    auto kids = [&](const std::string &id) {
      oracle::Ranked r;
      for (const std::string &rel : event_relations()) {
        auto rows = tables.lookup_events(id, rel);
        if (rows.size() > static_cast<std::size_t>(b)) rows.resize(b);
        for (const auto &row : rows) r.emplace_back(normalize_id(row.text), rel);
      }
      return r;
    };
    const oracle::WalkClosure ewant = oracle::walk_closure(ev.id, ed, kids, {});
    std::map<std::string, int> ge, we;
    for (const Node &n : egot.nodes) {
      if (n.id == ev.id || n.kind == NodeKind::kInferredEvent) ge[n.id] = n.depth;
      v.expect(n.depth <= ev.depth + ed, "event depth bound");
    }
    for (const auto &[id, wn] : ewant.nodes) we[id] = ev.depth + wn.depth;
    v.expect(ge == we, "event closure, trial " + std::to_string(trial));
    std::vector<std::vector<std::string>> chains;
    for (const auto &chain : egot.chains) {
      std::vector<std::string> ids;
      for (const ChainHop &h : chain.hops) ids.push_back(normalize_id(h.event));
      chains.push_back(std::move(ids));
    }
    v.expect(chains == ewant.chains, "event chains, trial " + std::to_string(trial));
  }
}

void florida_end_to_end(Verdict &v) {
  const FixtureBackend backend(load_fixtures(world::fixture_path("florida/bundle.jsonl")));
  const ConceptStore store = ConceptStore::load(world::fixture_path("florida/concepts.tsv"));
  const RuleCorefProvider coref;
  const PipelineEnv env{backend.providers(), &store, &coref};
  const auto start = Clock::now();
  const StoryResult r = run("Jenny lived in Florida.", "enjoy sunshine", PipelineConfig{}, env);
  const double secs = seconds_since(start);
  v.expect(secs < 1.0, "took " + std::to_string(secs) + " s");
  v.expect(r.stop_reason == StopReason::kLinkConsumed,
           "stop reason " + std::string(to_string(r.stop_reason)));
  const auto &choices = r.best().choices;
  const bool linked = !choices.empty() && choices.front().second.link.has_value();
  v.expect(linked, "no link on the first choice");
  if (linked) {
    v.expect(choices.front().second.link->path ==
                 std::vector<std::string>{"Jenny lived in Florida.", "swim", "go to beach",
                                          "enjoy sunshine"},
             "link path");
  }
  const std::string trace = trace_text(r);
  v.expect(trace == read_file(world::data_path("florida_trace.jsonl")), "trace differs from golden");
  const StoryResult again = run("Jenny lived in Florida.", "enjoy sunshine", PipelineConfig{}, env);
  v.expect(trace_text(again) == trace, "trace differs between runs");
}

void template_fidelity(Verdict &v) {
  std::mt19937 rng(109);
  static const std::vector<std::string> names = {"Jenny", "Tom", "Maria"};
  for (int trial = 0; trial < 50; ++trial) {
    const EventParts p = world::random_parts(rng);
    const std::vector<std::string> subj(names.begin(), names.begin() + 1 + rng() % 3);
    std::vector<SubjectChoice> choices;
    for (const auto &n : subj) choices.push_back({SubjectChoice::Kind::kPriorSubject, n});
    const auto got = make_templates(p, choices);
    const auto want = oracle::enumerate_templates(p, subj);
    const std::size_t closed = oracle::closed_form_count(
        p.verbs.size(), !p.adjectives.empty(), !p.nouns.empty(), subj.size());
    const std::string at = "trial " + std::to_string(trial);
    v.expect(got.size() == closed, at + " count vs closed form");
    v.expect(want.size() == closed, at + " enumeration vs closed form");
    std::vector<std::pair<std::string, std::vector<int>>> a, b;
    for (const Template &t : got) {
      a.emplace_back(t.render(), world::runs_vector(t.runs));
      bool bounded = t.runs.lead >= 0 && t.runs.lead <= kMaxLeadMasks &&
                     t.runs.trailing >= 0 && t.runs.trailing <= kMaxTrailingMasks;
      for (int x : {t.runs.before_verb, t.runs.before_adjectives, t.runs.before_nouns}) {
        bounded = bounded && x >= -1 && x <= kMaxInnerMasks;
      }
      v.expect(bounded, at + " mask bounds");
    }
    for (const auto &s : want) b.emplace_back(s.rendered, s.runs);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    v.expect(a == b, at + " template multiset");
  }
}

void filtering_argmax(Verdict &v) {
  std::mt19937 rng(113);
  const auto &words = world::entity_words();
  std::uniform_int_distribution<int> len(1, 6), grade(-40, -1);
  for (int trial = 0; trial < 100; ++trial) {
    FixtureTables t;
    std::vector<std::string> texts;
    const int n = 1 + static_cast<int>(rng() % 60);
    for (int i = 0; i < n; ++i) {
      std::string text;
      for (int k = len(rng); k > 0; --k) text += (text.empty() ? "" : " ") + words[rng() % words.size()];
      std::vector<double> lps;
      for (std::size_t k = 0; k < split_words(text).size(); ++k) lps.push_back(grade(rng) / 8.0);
      t.sentence_scores[normalize_key(text)] = lps;
      texts.push_back(text);
    }
    const FixtureBackend backend(t);
    std::vector<ContinuationCandidate> cs;
    for (const std::string &text : texts) {
      ContinuationCandidate c;
      c.text = text;
      c.log_prob = score_sentence("", text, backend);
      cs.push_back(c);
    }
    const ContinuationCandidate best = select_continuation(cs);
    const ContinuationCandidate &want = cs[oracle::argmax_continuation(cs)];
    v.expect(best.text == want.text && best.log_prob == want.log_prob,
             "trial " + std::to_string(trial));
    auto shifted = cs;
    for (auto &c : shifted) c.log_prob += -2.75;
    std::shuffle(shifted.begin(), shifted.end(), rng);
    v.expect(select_continuation(shifted).text == best.text, "shift invariance");
  }
}

void beam_invariants(Verdict &v) {
  std::mt19937 rng(127);
  std::uniform_int_distribution<int> k(1, 4);
  std::uniform_real_distribution<double> alpha(0.0, 1.0);
  const RuleCorefProvider coref;
  for (int trial = 0; trial < 100; ++trial) {
    world::PlanningWorld pw = world::random_planning_world(rng);
    world::add_random_event_entities(pw.tables, rng, 0.1);
    const FixtureBackend backend(pw.tables);
    const ConceptStore store = world::make_store(pw.edges);
    const PipelineEnv env{backend.providers(), &store, &coref};
    const std::string profile = trial % 2 ? "wp" : "roc";
    PipelineConfig cfg = PipelineConfig::for_profile(profile);
    v.expect(cfg.max_length == (profile == "wp" ? 5 : 4), "profile cap");
    cfg.topk = k(rng);
    cfg.alpha = alpha(rng);
    const StoryResult r = run(pw.prompt, pw.goal, cfg, env);
    const std::size_t K = static_cast<std::size_t>(cfg.topk);
    const std::string at = "trial " + std::to_string(trial);
    for (std::size_t s = 0; s < r.width_per_step.size(); ++s) {
      v.expect(r.width_per_step[s] == std::min(K, r.candidates_per_step[s]), at + " width");
    }
    for (const BeamState &b : r.beams) {
      v.expect(b.generated() <= static_cast<std::size_t>(cfg.max_length), at + " length cap");
    }
    for (const TraceRecord &rec : r.trace) {
      if (rec.track == "link" || rec.step >= r.steps) continue;
      v.expect(rec.score.R < cfg.stop_threshold && !rec.score.link, at + " missed early stop");
    }
    const BeamState &best = r.best();
    if (r.stop_reason == StopReason::kScoreThreshold || r.stop_reason == StopReason::kGoalReached) {
      v.expect(best.generated() == best.choices.size(), at + " sentences after early stop");
    }
    if (r.stop_reason == StopReason::kScoreThreshold) {
      v.expect(best.R >= cfg.stop_threshold, at + " threshold stop below threshold");
    }
  }
}

void metrics_goldens(Verdict &v) {
  std::ifstream cin_(world::data_path("metrics_corpus.json"));
  std::ifstream gin(world::data_path("metrics_golden.json"));
  const json corpus = json::parse(cin_), golden = json::parse(gin);
  std::vector<EvalItem> items;
  for (const auto &j : corpus) {
    EvalItem it;
    it.id = j.at("id").get<std::string>();
    it.sentences = j.at("sentences").get<std::vector<std::string>>();
    if (j.contains("reference")) it.reference = j["reference"].get<std::string>();
    items.push_back(std::move(it));
  }
  v.expect(items.size() == 10, "corpus size");
  const MetricReport report = evaluate_corpus(items);
  for (std::size_t i = 0; i < items.size() && i < golden.size(); ++i) {
    const StoryMetrics &m = report.stories[i];
    const json &g = golden[i];
    auto check = [&](const std::optional<double> &got, const char *key) {
      const json &want = g[key];
      const std::string at = m.id + " " + key;
      if (want.is_null()) {
        v.expect(!got, at + " should be absent");
      } else {
        v.expect(got && std::abs(*got - want.get<double>()) <= 1e-9, at);
      }
    };
    check(m.bleu2, "bleu2");
    check(m.bleu3, "bleu3");
    check(m.self_bleu2, "self_bleu2");
    check(m.self_bleu3, "self_bleu3");
    check(m.rouge_l, "rouge_l");
  }
  const std::vector<std::string> same = {"the cat sat on the mat"};
  v.expect(bleu_n("the cat sat on the mat", same, 2) == 1.0, "identity bleu2");
  v.expect(bleu_n("the cat sat on the mat", same, 3) == 1.0, "identity bleu3");
  v.expect(rouge_l("the cat sat on the mat", same.front()) == 1.0, "identity rouge");
  const std::vector<std::string> other = {"dogs run far away"};
  v.expect(std::abs(bleu_n("cats sit very still", other, 2) - kBleuFloor / std::sqrt(12.0)) < 1e-21,
           "disjoint bleu2 floor");
  v.expect(rouge_l("cats sit very still", other.front()) == 0.0, "disjoint rouge");
  const std::vector<std::string> apart = {"cats sit", "dogs run"};
  v.expect(std::abs(self_bleu(apart, 2) - kBleuFloor / std::sqrt(2.0)) < 1e-21,
           "disjoint self-bleu floor");
}

void ablation_format(Verdict &v) {
  std::ostringstream out, err;
  const int code = cli::run({"ablate", "--dataset", world::fixture_path("ablation/pairs.json"),
                             "--provider", "fixture", "--fixtures", world::fixture_path("ablation"),
                             "--alphas", "0.5", "0.9", "0.25"},
                            out, err);
  v.expect(code == cli::kExitOk, "exit " + std::to_string(code) + ": " + err.str());
  const std::string table = out.str();
  static const std::regex layout(
      "Model \\| alpha \\| Avg\\. len\n"
      "Full \\| alpha=0\\.50 \\| [0-9]+\\.[0-9]{2} ± [0-9]+\\.[0-9]{2}\n"
      " \\| alpha=0\\.90 \\| [0-9]+\\.[0-9]{2} ± [0-9]+\\.[0-9]{2}\n"
      " \\| alpha=0\\.25 \\| [0-9]+\\.[0-9]{2} ± [0-9]+\\.[0-9]{2}\n");
  v.expect(std::regex_match(table, layout), "layout: " + table);
  v.expect(table == read_file(world::data_path("ablation_table.txt")), "table differs from golden");

  // Per-pair lengths derived by hand from the fixture graph.
  std::ifstream in(world::data_path("ablation_lengths.json"));
  const json expected = json::parse(in);
  const FixtureBackend backend(load_fixtures(world::fixture_path("ablation/bundle.jsonl")));
  const ConceptStore store = ConceptStore::load(world::fixture_path("ablation/concepts.tsv"));
  const RuleCorefProvider coref;
  const auto pairs = load_pairs(world::fixture_path("ablation/pairs.json"));
  const std::vector<double> alphas = {0.5, 0.9, 0.25};
  const auto rows =
      run_ablation(pairs, alphas, PipelineConfig{}, {backend.providers(), &store, &coref});
  for (std::size_t i = 0; i < rows.size(); ++i) {
    v.expect(json(rows[i].lengths) == expected.at("lengths"),
             "alpha " + std::to_string(alphas[i]) + " lengths " + json(rows[i].lengths).dump());
  }
}

}  // namespace
}  // namespace kgplot

int main() {
  using Check = std::function<void(kgplot::Verdict &)>;
  const std::vector<std::pair<const char *, Check>> checks = {
      {"scoring matches brute-force node matching (200 pairs, < 5 s)", kgplot::scoring_oracle},
      {"R is affine in alpha; a detected link forces R = 1", kgplot::affine_and_link},
      {"entity and event expansion match the BFS oracle (100 configs)", kgplot::bfs_equivalence},
      {"Florida example stops with LinkConsumed, golden trace, < 1 s", kgplot::florida_end_to_end},
      {"template counts match enumeration and the closed form (50 shapes)",
       kgplot::template_fidelity},
      {"continuation filtering equals the linear-scan argmax (100 tables)",
       kgplot::filtering_argmax},
      {"beam width, length cap and early stop hold (100 runs)", kgplot::beam_invariants},
      {"metrics reproduce the 10-item golden corpus", kgplot::metrics_goldens},
      {"ablation table has the mean ± std per alpha layout", kgplot::ablation_format},
  };
  int failed = 0;
  for (const auto &[name, check] : checks) {
    kgplot::Verdict v;
    try {
      check(v);
    } catch (const std::exception &e) {
      v.expect(false, std::string("threw: ") + e.what());
    }
    if (v.ok()) {
      std::cout << "PASS " << name << '\n';
    } else {
      std::cout << "FAIL " << name << ": " << v.summary() << '\n';
      ++failed;
    }
  }
  std::cout << (checks.size() - failed) << "/" << checks.size() << " criteria passed\n";
  return failed;
}
