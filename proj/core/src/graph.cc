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

#include "kgplot/graph.h"

#include <tuple>

#include "kgplot/error.h"
#include "kgplot/text.h"

namespace kgplot {

std::string_view to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::kStoryEntity: return "StoryEntity";
    case NodeKind::kStoryEvent: return "StoryEvent";
    case NodeKind::kInferredEntity: return "InferredEntity";
    case NodeKind::kInferredEvent: return "InferredEvent";
  }
  return "StoryEntity";
}

NodeKind parse_node_kind(std::string_view name) {
  for (NodeKind k : all_kinds()) {
    if (to_string(k) == name) return k;
  }
  throw ValidationError("unknown node kind '" + std::string(name) + "'");
}

Node Node::story(std::string_view surface, NodeKind kind) {
  Node n;
  n.id = normalize_id(surface);
  n.surface = collapse_whitespace(surface);
  n.kind = kind;
  return n;
}

Node Node::inferred(std::string_view surface, NodeKind kind, int depth,
                    std::string relation) {
  Node n;
  n.id = normalize_id(surface);
  n.surface = collapse_whitespace(surface);
  n.kind = kind;
  n.depth = depth;
  n.source_relation = std::move(relation);
  return n;
}

void Node::validate() const {
  if (id.empty()) throw ValidationError("node id is empty");
  if (id != to_lower(id) || id != collapse_whitespace(id)) {
    throw ValidationError("node id '" + id + "' is not normalized");
  }
  if (is_story_kind(kind)) {
    if (depth != 0) {
      throw ValidationError("story node '" + id + "' must have depth 0");
    }
  } else {
    if (depth < 1) {
      throw ValidationError("inferred node '" + id + "' must have depth >= 1");
    }
    if (!source_relation || source_relation->empty()) {
      throw ValidationError("inferred node '" + id + "' lacks a source relation");
    }
  }
}

Node promote_to_story(Node node) {
  node.kind = is_event_kind(node.kind) ? NodeKind::kStoryEvent : NodeKind::kStoryEntity;
  node.depth = 0;
  return node;
}

bool preferred(const Node &a, const Node &b) {
  auto key = [](const Node &n) {
    return std::make_tuple(!is_story_kind(n.kind), n.depth, static_cast<int>(n.kind),
                           std::cref(n.surface), n.source_relation.value_or(""));
  };
  return key(a) < key(b);
}

const Node *KnowledgeGraph::find(std::string_view id) const {
  auto it = nodes_.find(id);
  return it == nodes_.end() ? nullptr : &it->second;
}

void KnowledgeGraph::insert_node(const Node &node) {
  node.validate();
  auto [it, inserted] = nodes_.try_emplace(node.id, node);
  if (!inserted && preferred(node, it->second)) it->second = node;
}

void KnowledgeGraph::insert_triple(const Triple &triple, const Node &subject,
                                   const Node &object) {
  if (triple.relation.empty()) throw ValidationError("triple relation is empty");
  if (triple.subject.empty() || triple.object.empty()) {
    throw ValidationError("triple endpoint id is empty");
  }
  if (subject.id != triple.subject || object.id != triple.object) {
    throw ValidationError("triple endpoints <" + triple.subject + ", " +
                          triple.object + "> do not match nodes <" + subject.id +
                          ", " + object.id + ">");
  }
  subject.validate();
  object.validate();
  insert_node(subject);
  insert_node(object);
  edges_.insert(triple);
}

void KnowledgeGraph::insert_all(const KnowledgeGraph &other) {
  for (const auto &[id, node] : other.nodes_) insert_node(node);
  edges_.insert(other.edges_.begin(), other.edges_.end());
}

std::vector<Node> KnowledgeGraph::entities(const KindSet &kinds) const {
  std::vector<Node> out;
  for (const auto &[id, node] : nodes_) {
    if (kinds.count(node.kind)) out.push_back(node);
  }
  return out;
}

nlohmann::json KnowledgeGraph::to_json() const {
  nlohmann::json nodes = nlohmann::json::array();
  for (const auto &[id, n] : nodes_) {
    nodes.push_back({{"id", n.id},
                     {"surface", n.surface},
                     {"kind", std::string(to_string(n.kind))},
                     {"depth", n.depth},
                     {"source_relation", n.source_relation
                                             ? nlohmann::json(*n.source_relation)
                                             : nlohmann::json(nullptr)}});
  }
  nlohmann::json edges = nlohmann::json::array();
  for (const Triple &t : edges_) {
    edges.push_back({{"s", t.subject}, {"r", t.relation}, {"o", t.object}});
  }
  return {{"label", label_}, {"nodes", std::move(nodes)}, {"edges", std::move(edges)}};
}

KnowledgeGraph KnowledgeGraph::from_json(const nlohmann::json &j) {
  try {
    KnowledgeGraph g(j.value("label", std::string()));
    for (const auto &jn : j.at("nodes")) {
      Node n;
      n.id = jn.at("id").get<std::string>();
      n.surface = jn.value("surface", n.id);
      n.kind = parse_node_kind(jn.at("kind").get<std::string>());
      n.depth = jn.value("depth", 0);
      if (jn.contains("source_relation") && !jn["source_relation"].is_null()) {
        n.source_relation = jn["source_relation"].get<std::string>();
      }
      g.insert_node(n);
    }
    for (const auto &je : j.at("edges")) {
      Triple t{je.at("s").get<std::string>(), je.at("r").get<std::string>(),
               je.at("o").get<std::string>()};
      const Node *s = g.find(t.subject);
      const Node *o = g.find(t.object);
      if (!s || !o) {
        throw ValidationError("edge endpoint not among nodes: " + t.subject + " -> " +
                              t.object);
      }
      if (t.relation.empty()) throw ValidationError("edge relation is empty");
      g.edges_.insert(std::move(t));
    }
    return g;
  } catch (const nlohmann::json::exception &e) {
    throw ValidationError(std::string("malformed graph json: ") + e.what());
  }
}

std::string KnowledgeGraph::serialize() const { return to_json().dump(); }

KnowledgeGraph add_triple(const KnowledgeGraph &graph, const Triple &triple,
                          const Node &subject, const Node &object) {
  KnowledgeGraph out = graph;
  out.insert_triple(triple, subject, object);
  return out;
}

KnowledgeGraph merge(const KnowledgeGraph &a, const KnowledgeGraph &b) {
  KnowledgeGraph out = a;
  out.insert_all(b);
  return out;
}

std::vector<Node> entities(const KnowledgeGraph &graph, const KindSet &kinds) {
  return graph.entities(kinds);
}

}  // namespace kgplot
