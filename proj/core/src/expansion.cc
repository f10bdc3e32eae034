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

#include "kgplot/expansion.h"

#include <algorithm>
#include <functional>
#include <map>

#include "kgplot/error.h"
#include "kgplot/lexicon.h"
#include "kgplot/text.h"

namespace kgplot {
namespace {

// Closure under construction: first insertion of an id wins, which under
// breadth-first discovery is also the shallowest.
class ClosureBuilder {
 public:
  explicit ClosureBuilder(const std::set<std::string> &exclude) : exclude_(exclude) {}

  bool blocked(const std::string &id) const {
    return id.empty() || exclude_.count(id) > 0 || nodes_.count(id) > 0;
  }

  bool add(Node node) {
    if (blocked(node.id)) return false;
    const std::string id = node.id;
    nodes_.emplace(id, std::move(node));
    return true;
  }

  void edge(Triple t) { edges_.push_back(std::move(t)); }
  const Node &at(const std::string &id) const { return nodes_.at(id); }

  Closure finish(std::vector<InferenceChain> chains = {}) && {
    Closure c;
    for (auto &[id, n] : nodes_) c.nodes.push_back(std::move(n));
    c.edges = std::move(edges_);
    c.chains = std::move(chains);
    return c;
  }

 private:
  const std::set<std::string> &exclude_;
  std::map<std::string, Node> nodes_;
  std::vector<Triple> edges_;
};

std::vector<ConceptEdge> top_children(const ConceptStore &store, const std::string &head,
                                      int fanout) {
  std::vector<ConceptEdge> kids = store.lookup(head);
  std::erase_if(kids, [&](const ConceptEdge &e) { return e.tail == head; });
  if (kids.size() > static_cast<std::size_t>(fanout)) kids.resize(fanout);
  return kids;
}

std::vector<EventInference> ask(const EventInferenceProvider &provider, const std::string &text,
                                std::span<const std::string> relations, int beam) {
  try {
    return provider.infer(text, relations, beam);
  } catch (const Error &e) {
    throw ExpansionError("inference on '" + text + "' failed: " + e.what());
  }
}

std::set<std::string> story_ids(const KnowledgeGraph &g) {
  std::set<std::string> ids;
  for (const auto &[id, n] : g.nodes()) {
    if (is_story_kind(n.kind)) ids.insert(id);
  }
  return ids;
}

// Adds closure nodes and the edges whose endpoints are now present.
void absorb(KnowledgeGraph &g, const Closure &c) {
  for (const Node &n : c.nodes) g.insert_node(n);
  for (const Triple &t : c.edges) {
    const Node *s = g.find(t.subject);
    const Node *o = g.find(t.object);
    if (s && o) g.insert_triple(t, *s, *o);
  }
}

std::vector<InferenceChain> rooted_chains(const std::string &root, const Node &seed,
                                          const std::vector<InferenceChain> &tails) {
  const ChainHop first{seed.surface, seed.source_relation.value_or("")};
  std::vector<InferenceChain> out;
  if (tails.empty()) {
    out.push_back(InferenceChain{root, {first}});
    return out;
  }
  for (const InferenceChain &c : tails) {
    InferenceChain chain{root, {first}};
    chain.hops.insert(chain.hops.end(), c.hops.begin(), c.hops.end());
    out.push_back(std::move(chain));
  }
  return out;
}

}  // namespace

nlohmann::json InferenceChain::to_json() const {
  nlohmann::json hops_json = nlohmann::json::array();
  for (const ChainHop &h : hops) hops_json.push_back({{"event", h.event}, {"relation", h.relation}});
  return {{"root", root}, {"hops", std::move(hops_json)}};
}

std::string_view to_string(Track track) {
  return track == Track::kEntity ? "entity" : "event";
}

void ExpansionConfig::validate() const {
  if (depth_story < 1) throw ValidationError("story look-ahead depth must be >= 1");
  if (depth_goal < 1) throw ValidationError("goal look-ahead depth must be >= 1");
  if (provider_beam < 1) throw ValidationError("provider beam must be >= 1");
  if (fanout < 1) throw ValidationError("fanout must be >= 1");
}

Closure expand_entity(const Node &seed, const ConceptStore &store, int depth, int fanout,
                      const std::set<std::string> &exclude) {
  if (depth < 0) throw ValidationError("expansion depth must be >= 0");
  if (fanout < 1) throw ValidationError("fanout must be >= 1");
  ClosureBuilder b(exclude);
  b.add(seed);
  std::vector<std::string> frontier = {seed.id};
  for (int hop = 1; hop <= depth && !frontier.empty(); ++hop) {
    std::vector<std::string> next;
    for (const std::string &parent : frontier) {
      for (const ConceptEdge &e : top_children(store, parent, fanout)) {
        if (!b.add(Node::inferred(e.tail_surface, NodeKind::kInferredEntity, seed.depth + hop,
                                  e.relation))) {
          continue;
        }
        b.edge(Triple{parent, e.relation, e.tail});
        next.push_back(e.tail);
      }
    }
    frontier = std::move(next);
  }
  return std::move(b).finish();
}

std::vector<Node> infer_events(std::span<const std::string> history,
                               const EventInferenceProvider &provider, int beam) {
  if (history.empty()) throw ValidationError("event inference needs a non-empty history");
  if (beam < 1) throw ValidationError("provider beam must be >= 1");
  const std::string text = join(std::vector<std::string>(history.begin(), history.end()), " ");
  std::vector<Node> out;
  std::set<std::string> seen;
  for (const std::string &rel : event_relations()) {
    std::vector<EventInference> results;
    try {
      results = provider.infer(text, std::span<const std::string>(&rel, 1), beam);
    } catch (const Error &e) {
      throw ExpansionError("event inference for relation " + rel + " failed: " + e.what());
    }
    if (results.size() > static_cast<std::size_t>(beam)) results.resize(beam);
    for (const EventInference &r : results) {
      Node n = Node::inferred(r.text, NodeKind::kInferredEvent, 1, rel);
      if (n.id.empty() || !seen.insert(n.id).second) continue;
      out.push_back(std::move(n));
    }
  }
  return out;
}

Closure relevant_entities(const Node &event, const ConceptStore &store,
                          const EventInferenceProvider &provider, int beam, int fanout) {
  const std::set<std::string> exclude = {event.id};
  ClosureBuilder b(exclude);
  const int depth = std::max(event.depth, 1);

  for (const EventInference &r : ask(provider, event.surface, entity_relations(), beam)) {
    Node n = Node::inferred(r.text, NodeKind::kInferredEntity, depth, r.relation);
    const std::string id = n.id;
    if (b.add(std::move(n))) b.edge(Triple{event.id, r.relation, id});
  }

  std::vector<std::string> heads = {event.id};
  const auto words = split_words(event.id);
  if (words.size() > 1) {
    for (const std::string &w : words) {
      if (lexicon::is_closed_class(w) || lexicon::is_known_verb(w)) continue;
      if (std::find(heads.begin(), heads.end(), w) == heads.end()) heads.push_back(w);
    }
  }
  for (const std::string &head : heads) {
    for (const ConceptEdge &e : top_children(store, head, fanout)) {
      if (b.add(Node::inferred(e.tail_surface, NodeKind::kInferredEntity, depth, e.relation))) {
        b.edge(Triple{event.id, e.relation, e.tail});
      }
    }
  }
  return std::move(b).finish();
}

Closure expand_event(const Node &seed, const EventInferenceProvider &provider,
                     const ConceptStore &store, int depth, int beam, int fanout,
                     const std::set<std::string> &exclude) {
  if (depth < 0) throw ValidationError("expansion depth must be >= 0");
  if (beam < 1) throw ValidationError("provider beam must be >= 1");
  ClosureBuilder b(exclude);
  b.add(seed);
  std::vector<std::string> events = {seed.id};
  std::map<std::string, std::vector<std::string>> children;

  std::vector<std::string> frontier = {seed.id};
  for (int hop = 1; hop <= depth && !frontier.empty(); ++hop) {
    std::vector<std::string> next;
    for (const std::string &parent : frontier) {
      const std::string surface = b.at(parent).surface;
      for (const EventInference &r : ask(provider, surface, event_relations(), beam)) {
        Node n = Node::inferred(r.text, NodeKind::kInferredEvent, seed.depth + hop, r.relation);
        const std::string id = n.id;
        if (id == parent || !b.add(std::move(n))) continue;
        b.edge(Triple{parent, r.relation, id});
        children[parent].push_back(id);
        next.push_back(id);
        events.push_back(id);
      }
    }
    frontier = std::move(next);
  }

  for (const std::string &id : events) {
    const Closure ents = relevant_entities(b.at(id), store, provider, beam, fanout);
    for (const Node &n : ents.nodes) {
      if (b.add(n)) {
        for (const Triple &t : ents.edges) {
          if (t.object == n.id) b.edge(t);
        }
      }
    }
  }

  std::vector<InferenceChain> chains;
  std::vector<ChainHop> path;
  std::function<void(const std::string &)> walk = [&](const std::string &id) {
    auto it = children.find(id);
    if (it == children.end()) {
      if (!path.empty()) chains.push_back(InferenceChain{seed.surface, path});
      return;
    }
    for (const std::string &child : it->second) {
      const Node &n = b.at(child);
      path.push_back(ChainHop{n.surface, n.source_relation.value_or("")});
      walk(child);
      path.pop_back();
    }
  };
  walk(seed.id);
  return std::move(b).finish(std::move(chains));
}

std::vector<CandidateExpansion> candidate_expansions(const KnowledgeGraph &graph,
                                                     std::span<const std::string> history,
                                                     const ConceptStore &store,
                                                     const EventInferenceProvider &provider,
                                                     const ExpansionConfig &config) {
  config.validate();
  if (graph.empty()) throw ValidationError("candidate expansion needs a non-empty graph");
  const std::set<std::string> story = story_ids(graph);
  const int further = config.depth_story - 1;
  std::vector<CandidateExpansion> out;

  // Entity track: first-hop concept-store neighbours of story entities.
  std::map<std::string, std::pair<Node, std::string>> entity_seeds;  // id -> (seed, parent)
  for (const Node &parent : graph.entities({NodeKind::kStoryEntity})) {
    for (const ConceptEdge &e : top_children(store, parent.id, config.fanout)) {
      if (story.count(e.tail) || entity_seeds.count(e.tail)) continue;
      entity_seeds.emplace(
          e.tail, std::make_pair(Node::inferred(e.tail_surface, NodeKind::kInferredEntity, 1,
                                                e.relation),
                                 parent.id));
    }
  }
  for (const auto &[id, entry] : entity_seeds) {
    const auto &[seed, parent] = entry;
    CandidateExpansion c;
    c.seed = seed;
    c.track = Track::kEntity;
    const Closure cl = expand_entity(seed, store, further, config.fanout, story);
    c.inference_set = cl.nodes;
    c.graph = graph;
    absorb(c.graph, cl);
    c.graph.insert_triple(Triple{parent, *seed.source_relation, seed.id}, *graph.find(parent),
                          *c.graph.find(seed.id));
    out.push_back(std::move(c));
  }

  // Event track: social-event inferences on the story so far.
  if (!history.empty()) {
    const std::string root =
        join(std::vector<std::string>(history.begin(), history.end()), " ");
    std::vector<Node> events = infer_events(history, provider, config.provider_beam);
    std::erase_if(events, [&](const Node &n) { return story.count(n.id) > 0; });
    std::sort(events.begin(), events.end(),
              [](const Node &a, const Node &b) { return a.id < b.id; });
    for (const Node &seed : events) {
      CandidateExpansion c;
      c.seed = seed;
      c.track = Track::kEvent;
      const Closure cl = expand_event(seed, provider, store, further, config.provider_beam,
                                      config.fanout, story);
      c.inference_set = cl.nodes;
      c.graph = graph;
      absorb(c.graph, cl);
      c.chains = rooted_chains(root, seed, cl.chains);
      out.push_back(std::move(c));
    }
  }
  return out;
}

ExpandedGoal expand_goal(const KnowledgeGraph &goal_graph, const std::string &goal_text,
                         const ConceptStore &store, const EventInferenceProvider &provider,
                         const ExpansionConfig &config) {
  config.validate();
  ExpandedGoal out{goal_graph, {}};
  std::set<std::string> goal_ids;
  for (const auto &[id, n] : goal_graph.nodes()) goal_ids.insert(id);

  for (const auto &[id, node] : goal_graph.nodes()) {
    absorb(out.graph, expand_entity(node, store, config.depth_goal, config.fanout, goal_ids));
    Closure ents = relevant_entities(node, store, provider, config.provider_beam, config.fanout);
    std::erase_if(ents.nodes, [&](const Node &n) { return goal_ids.count(n.id) > 0; });
    absorb(out.graph, ents);
  }

  if (!collapse_whitespace(goal_text).empty()) {
    const std::vector<std::string> history = {goal_text};
    for (const Node &seed : infer_events(history, provider, config.provider_beam)) {
      if (goal_ids.count(seed.id)) continue;
      const Closure cl = expand_event(seed, provider, store, config.depth_goal - 1,
                                      config.provider_beam, config.fanout, goal_ids);
      absorb(out.graph, cl);
      for (auto &chain : rooted_chains(goal_text, seed, cl.chains)) {
        out.chains.push_back(std::move(chain));
      }
    }
  }
  return out;
}

}  // namespace kgplot
