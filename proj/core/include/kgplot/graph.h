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

#ifndef KGPLOT_GRAPH_H_
#define KGPLOT_GRAPH_H_

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace kgplot {

enum class NodeKind { kStoryEntity, kStoryEvent, kInferredEntity, kInferredEvent };

std::string_view to_string(NodeKind kind);
NodeKind parse_node_kind(std::string_view name);

inline bool is_story_kind(NodeKind k) {
  return k == NodeKind::kStoryEntity || k == NodeKind::kStoryEvent;
}
inline bool is_event_kind(NodeKind k) {
  return k == NodeKind::kStoryEvent || k == NodeKind::kInferredEvent;
}

struct Node {
  std::string id;
  std::string surface;
  NodeKind kind = NodeKind::kStoryEntity;
  int depth = 0;
  std::optional<std::string> source_relation;

  // Story-extracted node; id is derived from the surface text.
  static Node story(std::string_view surface, NodeKind kind = NodeKind::kStoryEntity);
  static Node inferred(std::string_view surface, NodeKind kind, int depth,
                       std::string relation);

  // Throws ValidationError if any node invariant is broken.
  void validate() const;

  bool operator==(const Node &) const = default;
};

// The same node re-labelled as story-extracted (depth 0).
Node promote_to_story(Node node);

// Total preference order used when two nodes share an id: story kinds beat
// inferred ones, shallower beats deeper, then the remaining fields break
// ties. Returns true if `a` is preferred over `b`.
bool preferred(const Node &a, const Node &b);

struct Triple {
  std::string subject;
  std::string relation;
  std::string object;

  auto operator<=>(const Triple &) const = default;
};

using KindSet = std::set<NodeKind>;

inline const KindSet &all_kinds() {
  static const KindSet kAll = {NodeKind::kStoryEntity, NodeKind::kStoryEvent,
                               NodeKind::kInferredEntity, NodeKind::kInferredEvent};
  return kAll;
}

// Reader model / goal world state. Nodes are keyed by id and edges are a
// set, so iteration is always in canonical order.
class KnowledgeGraph {
 public:
  KnowledgeGraph() = default;
  explicit KnowledgeGraph(std::string label) : label_(std::move(label)) {}

  const std::string &label() const { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }

  const std::map<std::string, Node, std::less<>> &nodes() const { return nodes_; }
  const std::set<Triple> &edges() const { return edges_; }

  // Number of distinct node ids.
  std::size_t size() const { return nodes_.size(); }
  bool empty() const { return nodes_.empty(); }
  bool contains(std::string_view id) const { return nodes_.find(id) != nodes_.end(); }
  const Node *find(std::string_view id) const;

  // In-place builders used while a graph is being assembled.
  void insert_node(const Node &node);
  void insert_triple(const Triple &triple, const Node &subject, const Node &object);
  void insert_all(const KnowledgeGraph &other);

  std::vector<Node> entities(const KindSet &kinds) const;

  nlohmann::json to_json() const;
  static KnowledgeGraph from_json(const nlohmann::json &j);
  // Canonical compact serialization.
  std::string serialize() const;

  bool operator==(const KnowledgeGraph &) const = default;

 private:
  std::string label_;
  std::map<std::string, Node, std::less<>> nodes_;
  std::set<Triple> edges_;
};

// Value-returning operations; inputs are never modified.
KnowledgeGraph add_triple(const KnowledgeGraph &graph, const Triple &triple,
                          const Node &subject, const Node &object);
KnowledgeGraph merge(const KnowledgeGraph &a, const KnowledgeGraph &b);
std::vector<Node> entities(const KnowledgeGraph &graph, const KindSet &kinds);

}  // namespace kgplot

#endif  // KGPLOT_GRAPH_H_
