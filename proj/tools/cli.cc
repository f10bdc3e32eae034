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

#include "cli.h"

#include <csignal>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "kgplot/ablation.h"
#include "kgplot/acquisition.h"
#include "kgplot/concept_store.h"
#include "kgplot/error.h"
#include "kgplot/fixtures.h"
#include "kgplot/http.h"
#include "kgplot/metrics.h"
#include "kgplot/pipeline.h"
#include "kgplot/server.h"

namespace kgplot::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Thrown for bad input files or flag combinations found after parsing.
struct UsageError : Error {
  using Error::Error;
};

struct ProviderFlags {
  std::string provider = "fixture";
  std::string endpoint;
  std::string fixtures;
  std::string concepts;
  int timeout_ms = 30000;
  int retries = 2;
};

void add_provider_flags(CLI::App *cmd, ProviderFlags &f) {
  cmd->add_option("--provider", f.provider, "Provider backend")
      ->check(CLI::IsMember({"fixture", "http"}));
  cmd->add_option("--endpoint", f.endpoint, "Model service base URL (http provider)");
  cmd->add_option("--fixtures", f.fixtures,
                  "Fixture bundle (.jsonl) or a directory holding bundle.jsonl and concepts.tsv");
  cmd->add_option("--concepts", f.concepts, "Concept store TSV");
  cmd->add_option("--timeout-ms", f.timeout_ms, "HTTP per-call timeout")->check(CLI::PositiveNumber);
  cmd->add_option("--retries", f.retries, "HTTP retry count")->check(CLI::NonNegativeNumber);
}

struct ConfigFlags {
  std::string profile = "roc";
  std::string config_file;
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
  bool append_goal = false;
  CLI::Option *profile_option = nullptr;
  std::vector<CLI::Option *> overrides;
};

void add_config_flags(CLI::App *cmd, ConfigFlags &f) {
  f.profile_option = cmd->add_option("--profile", f.profile, "Dataset profile");
  f.profile_option->check(CLI::IsMember({"roc", "wp", "ft"}));
  cmd->add_option("--config", f.config_file, "JSON file with PipelineConfig fields")
      ->check(CLI::ExistingFile);
  f.overrides = {
      cmd->add_option("--alpha", f.alpha, "Weight of entity overlap")->check(CLI::Range(0.0, 1.0)),
      cmd->add_option("--topk", f.topk, "Beam width")->check(CLI::PositiveNumber),
      cmd->add_option("--depth-story", f.depth_story, "Story look-ahead")->check(CLI::PositiveNumber),
      cmd->add_option("--depth-goal", f.depth_goal, "Goal look-ahead")->check(CLI::PositiveNumber),
      cmd->add_option("--provider-beam", f.provider_beam, "Inferences per relation")
          ->check(CLI::PositiveNumber),
      cmd->add_option("--fanout", f.fanout, "Concept-store children per hop")
          ->check(CLI::PositiveNumber),
      cmd->add_option("--template-cap", f.template_cap, "Templates kept per event")
          ->check(CLI::PositiveNumber),
      cmd->add_option("--link-threshold", f.link_threshold, "Similarity needed for a link")
          ->check(CLI::Range(0.0, 1.0)),
      cmd->add_option("--stop-threshold", f.stop_threshold, "R that ends generation")
          ->check(CLI::Range(0.0, 1.0)),
      cmd->add_option("--max-length", f.max_length, "Generated sentences per segment")
          ->check(CLI::PositiveNumber),
      cmd->add_flag("--append-goal", f.append_goal, "Append the goal text once it is reached"),
  };
}

json read_json(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception &e) {
    throw UsageError(path + ": " + e.what());
  }
}

// Flags beat the config file, which beats the profile defaults.
PipelineConfig resolve_config(const ConfigFlags &f) {
  json file = json::object();
  if (!f.config_file.empty()) file = read_json(f.config_file);
  std::string profile = "roc";
  if (f.profile_option->count() > 0) {
    profile = f.profile;
  } else if (file.is_object() && file.contains("profile") && file["profile"].is_string()) {
    profile = file["profile"].get<std::string>();
  }
  PipelineConfig c = PipelineConfig::from_json(file, PipelineConfig::for_profile(profile));
  c.profile = profile;
  auto set = [&](std::size_t i) { return f.overrides[i]->count() > 0; };
  if (set(0)) c.alpha = f.alpha;
  if (set(1)) c.topk = f.topk;
  if (set(2)) c.depth_story = f.depth_story;
  if (set(3)) c.depth_goal = f.depth_goal;
  if (set(4)) c.provider_beam = f.provider_beam;
  if (set(5)) c.fanout = f.fanout;
  if (set(6)) c.template_cap = f.template_cap;
  if (set(7)) c.link_threshold = f.link_threshold;
  if (set(8)) c.stop_threshold = f.stop_threshold;
  if (set(9)) c.max_length = f.max_length;
  if (set(10)) c.append_goal_on_reach = f.append_goal;
  c.validate();
  return c;
}

// Owns whichever backend the flags select plus the concept store.
class Runtime {
 public:
  explicit Runtime(const ProviderFlags &f) {
    fs::path concepts = f.concepts;
    if (f.provider == "fixture") {
      if (f.fixtures.empty()) throw UsageError("--fixtures is required with --provider fixture");
      fs::path bundle = f.fixtures;
      if (fs::is_directory(bundle)) {
        if (concepts.empty() && fs::exists(bundle / "concepts.tsv")) concepts = bundle / "concepts.tsv";
        bundle /= "bundle.jsonl";
      }
      if (!fs::exists(bundle)) throw UsageError("fixture bundle not found: " + bundle.string());
      fixture_ = std::make_unique<FixtureBackend>(load_fixtures(bundle));
      providers_ = fixture_->providers();
    } else {
      if (f.endpoint.empty()) throw UsageError("--endpoint is required with --provider http");
      ProviderEndpointConfig cfg;
      cfg.base_url = f.endpoint;
      cfg.timeout_ms = f.timeout_ms;
      cfg.retries = f.retries;
      cfg.validate();
      http_ = std::make_unique<HttpBackend>(cfg);
      providers_ = http_->providers();
    }
    if (!concepts.empty()) {
      if (!fs::exists(concepts)) throw UsageError("concept store not found: " + concepts.string());
      store_ = ConceptStore::load(concepts);
    }
    concepts_path_ = concepts.string();
  }

  PipelineEnv env() const { return PipelineEnv{providers_, &store_, &coref_}; }
  const ProviderSet &providers() const { return providers_; }
  const std::string &concepts_path() const { return concepts_path_; }

 private:
  std::unique_ptr<FixtureBackend> fixture_;
  std::unique_ptr<HttpBackend> http_;
  ProviderSet providers_;
  ConceptStore store_;
  RuleCorefProvider coref_;
  std::string concepts_path_;
};

void write_file(const fs::path &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

struct GenerateInput {
  std::string prompt;
  std::vector<std::string> goals;
};

json beam_json(const BeamState &b) {
  return {{"story", b.story},
          {"R", b.R},
          {"stop_reason", b.finished ? json(std::string(to_string(*b.finished))) : json(nullptr)}};
}

int cmd_generate(const ConfigFlags &cf, const ProviderFlags &pf, const std::string &prompt,
                 const std::string &goal, const std::string &goals_file,
                 const std::string &dataset_file, const std::string &out_dir, std::uint64_t seed,
                 std::ostream &out) {
  const PipelineConfig config = resolve_config(cf);

  std::vector<GenerateInput> inputs;
  if (!dataset_file.empty()) {
    if (!prompt.empty() || !goals_file.empty() || !goal.empty()) {
      throw UsageError("--dataset cannot be combined with --prompt/--goal/--goals");
    }
    try {
      for (const PromptGoal &p : load_pairs(dataset_file)) inputs.push_back({p.prompt, {p.goal}});
    } catch (const LoadError &e) {
      throw UsageError(e.what());
    }
  } else {
    if (prompt.empty()) throw UsageError("--prompt is required");
    GenerateInput in{prompt, {}};
    if (!goal.empty()) in.goals.push_back(goal);
    if (!goals_file.empty()) {
      const json g = read_json(goals_file);
      if (!g.is_array()) throw UsageError(goals_file + ": expected a JSON array of goal strings");
      for (const auto &item : g) {
        if (!item.is_string()) throw UsageError(goals_file + ": goals must be strings");
        in.goals.push_back(item.get<std::string>());
      }
    }
    if (in.goals.empty()) throw UsageError("give --goal or --goals");
    inputs.push_back(std::move(in));
  }
  if (inputs.empty()) throw UsageError("no prompt/goal pairs to run");

  Runtime rt(pf);
  const fs::path dir = out_dir;
  fs::create_directories(dir);

  json manifest = {{"config", config.to_json()},
                   {"provider", pf.provider},
                   {"endpoint", pf.provider == "http" ? json(pf.endpoint) : json(nullptr)},
                   {"fixtures", pf.fixtures.empty() ? json(nullptr) : json(pf.fixtures)},
                   {"concepts", rt.concepts_path().empty() ? json(nullptr) : json(rt.concepts_path())},
                   {"seed", seed}};
  json inputs_json = json::array();
  json outputs = json::array({"stories.json"});
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    inputs_json.push_back({{"prompt", inputs[i].prompt}, {"goals", inputs[i].goals}});
    outputs.push_back("trace_" + std::to_string(i) + ".jsonl");
  }
  manifest["inputs"] = std::move(inputs_json);
  manifest["outputs"] = std::move(outputs);
  write_file(dir / "manifest.json", manifest.dump(2) + "\n");

  const PipelineEnv env = rt.env();
  json stories = json::array();
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const ChainedResult res = run_goals(inputs[i].prompt, inputs[i].goals, config, env);
    json segments = json::array();
    std::ostringstream trace;
    for (std::size_t s = 0; s < res.segments.size(); ++s) {
      const StoryResult &seg = res.segments[s];
      json beams = json::array();
      for (const BeamState &b : seg.beams) beams.push_back(beam_json(b));
      segments.push_back({{"goal", inputs[i].goals[s]},
                          {"stop_reason", to_string(seg.stop_reason)},
                          {"steps", seg.steps},
                          {"goal_appended", seg.goal_appended},
                          {"beams", std::move(beams)}});
      for (const TraceRecord &r : seg.trace) {
        json j = r.to_json();
        j["segment"] = s;
        trace << j.dump() << '\n';
      }
    }
    stories.push_back({{"index", i},
                       {"prompt", inputs[i].prompt},
                       {"goals", inputs[i].goals},
                       {"story", res.story},
                       {"segments", std::move(segments)}});
    write_file(dir / ("trace_" + std::to_string(i) + ".jsonl"), trace.str());
    out << "[" << i << "] " << to_string(res.segments.back().stop_reason) << ": ";
    for (std::size_t k = 0; k < res.story.size(); ++k) out << (k ? " " : "") << res.story[k];
    out << '\n';
  }
  write_file(dir / "stories.json", stories.dump(2) + "\n");
  return kExitOk;
}

int cmd_ablate(const ConfigFlags &cf, const ProviderFlags &pf, const std::string &dataset_file,
               const std::vector<double> &alphas, const std::string &out_file,
               std::ostream &out) {
  PipelineConfig config = resolve_config(cf);
  std::vector<PromptGoal> pairs;
  try {
    pairs = load_pairs(dataset_file);
  } catch (const LoadError &e) {
    throw UsageError(e.what());
  }
  if (pairs.empty()) throw UsageError("dataset " + dataset_file + " is empty");
  Runtime rt(pf);
  const auto rows = run_ablation(pairs, alphas, config, rt.env());
  const std::string table = format_ablation_table(rows);
  out << table;
  if (!out_file.empty()) write_file(out_file, table);
  return kExitOk;
}

int cmd_eval(const std::string &stories_file, const std::string &gold_file,
             const ProviderFlags &pf, const std::string &format, const std::string &out_file,
             std::ostream &out) {
  const json stories = read_json(stories_file);
  if (!stories.is_array()) throw UsageError(stories_file + ": expected a JSON array");
  json gold = json::array();
  if (!gold_file.empty()) {
    gold = read_json(gold_file);
    if (!gold.is_array() || gold.size() != stories.size()) {
      throw UsageError(gold_file + ": expected an array aligned with the stories");
    }
  }
  std::vector<EvalItem> items;
  for (std::size_t i = 0; i < stories.size(); ++i) {
    const json &s = stories[i];
    EvalItem item;
    item.id = s.contains("id") ? s["id"].get<std::string>() : std::to_string(i);
    const char *key = s.contains("sentences") ? "sentences" : "story";
    if (!s.contains(key) || !s[key].is_array()) {
      throw UsageError(stories_file + ": item " + std::to_string(i) + " has no sentences");
    }
    item.sentences = s[key].get<std::vector<std::string>>();
    if (s.contains("reference")) item.reference = s["reference"].get<std::string>();
    if (!gold.empty()) {
      const json &g = gold[i];
      item.reference = g.is_string() ? g.get<std::string>() : g.at("text").get<std::string>();
    }
    items.push_back(std::move(item));
  }
  std::unique_ptr<Runtime> rt;
  if (!pf.fixtures.empty() || !pf.endpoint.empty()) rt = std::make_unique<Runtime>(pf);
  const MetricReport report =
      evaluate_corpus(items, rt ? rt->providers().similarity : nullptr);
  const std::string text = format == "csv" ? report.to_csv() : report.to_json().dump(2) + "\n";
  if (out_file.empty()) {
    out << text;
  } else {
    write_file(out_file, text);
  }
  return kExitOk;
}

int cmd_serve(const ProviderFlags &pf, const std::string &host, int port, std::ostream &out) {
  if (pf.fixtures.empty()) throw UsageError("--fixtures is required");
  ProviderFlags f = pf;
  f.provider = "fixture";
  Runtime rt(f);
  ProtocolServer server(rt.providers());
  out << "serving fixtures on http://" << host << ":" << port << std::endl;
  server.listen(host, port);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Goal-directed story planning over a commonsense knowledge graph", "kgplot"};
  app.require_subcommand(1);

  ConfigFlags gen_cfg, abl_cfg;
  ProviderFlags gen_prov, abl_prov, eval_prov, serve_prov;

  std::string prompt, goal, goals_file, dataset_file, out_dir = "out";
  std::uint64_t seed = 0;
  auto *gen = app.add_subcommand("generate", "Generate stories for prompt/goal pairs");
  gen->add_option("--prompt", prompt, "Prompt text");
  gen->add_option("--goal", goal, "Goal text");
  gen->add_option("--goals", goals_file, "JSON array of goals for a chained story")
      ->check(CLI::ExistingFile);
  gen->add_option("--dataset", dataset_file, "JSON array of {prompt, goal} pairs")
      ->check(CLI::ExistingFile);
  gen->add_option("--out", out_dir, "Output directory");
  gen->add_option("--seed", seed, "Recorded in the manifest");
  add_config_flags(gen, gen_cfg);
  add_provider_flags(gen, gen_prov);

  std::string abl_dataset, abl_out;
  std::vector<double> alphas = {0.50, 0.90, 0.25};
  auto *abl = app.add_subcommand("ablate", "Average story length to the goal per alpha");
  abl->add_option("--dataset", abl_dataset, "JSON array of {prompt, goal} pairs")
      ->required()
      ->check(CLI::ExistingFile);
  abl->add_option("--alphas", alphas, "Alpha values, in report order")
      ->check(CLI::Range(0.0, 1.0))
      ->delimiter(',');
  abl->add_option("--out", abl_out, "Also write the table here");
  add_config_flags(abl, abl_cfg);
  add_provider_flags(abl, abl_prov);

  std::string stories_file, gold_file, format = "json", eval_out;
  auto *ev = app.add_subcommand("eval", "Automatic metrics over generated stories");
  ev->add_option("--stories", stories_file, "Stories JSON")->required()->check(CLI::ExistingFile);
  ev->add_option("--gold", gold_file, "Reference stories JSON")->check(CLI::ExistingFile);
  ev->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  ev->add_option("--out", eval_out, "Report file (stdout if omitted)");
  add_provider_flags(ev, eval_prov);

  std::string host = "127.0.0.1";
  int port = 8000;
  auto *serve = app.add_subcommand("serve-fixtures", "Serve fixture tables over the wire protocol");
  serve->add_option("--host", host, "Bind address");
  serve->add_option("--port", port, "Bind port")->check(CLI::Range(0, 65535));
  add_provider_flags(serve, serve_prov);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError &e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*gen) {
      return cmd_generate(gen_cfg, gen_prov, prompt, goal, goals_file, dataset_file, out_dir,
                          seed, out);
    }
    if (*abl) return cmd_ablate(abl_cfg, abl_prov, abl_dataset, alphas, abl_out, out);
    if (*ev) return cmd_eval(stories_file, gold_file, eval_prov, format, eval_out, out);
    if (*serve) return cmd_serve(serve_prov, host, port, out);
  } catch (const UsageError &e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ValidationError &e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const LoadError &e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const PipelineError &e) {
    err << "pipeline error [" << e.stage() << "]: " << e.what() << '\n';
    return kExitPipeline;
  } catch (const Error &e) {
    err << "error: " << e.what() << '\n';
    return kExitPipeline;
  }
  return kExitUsage;
}

}  // namespace kgplot::cli
