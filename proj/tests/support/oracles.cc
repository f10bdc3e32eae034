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

#include "oracles.h"

#include <algorithm>
#include <sstream>

namespace kgplot::oracle {

Ranked store_children(const std::vector<RawEdge> &edges, const std::string &head, int fanout) {
  std::map<std::string, const RawEdge *> best;
  for (const RawEdge &e : edges) {
    if (e.head != head || e.tail == head) continue;
    auto it = best.find(e.tail);
    if (it == best.end() || e.weight > it->second->weight ||
        (e.weight == it->second->weight && e.relation < it->second->relation)) {
      best[e.tail] = &e;
    }
  }
  std::vector<const RawEdge *> list;
  for (const auto &[tail, e] : best) list.push_back(e);
  std::sort(list.begin(), list.end(), [](const RawEdge *a, const RawEdge *b) {
    if (a->weight != b->weight) return a->weight > b->weight;
    return a->tail < b->tail;
  });
  Ranked out;
  for (std::size_t i = 0; i < list.size() && static_cast<int>(i) < fanout; ++i) {
    out.emplace_back(list[i]->tail, list[i]->relation);
  }
  return out;
}

WalkClosure walk_closure(const std::string &seed, int depth,
                         const std::function<Ranked(const std::string &)> &children,
                         const std::set<std::string> &exclude) {
  WalkClosure out;
  out.nodes[seed] = WalkNode{};

  struct Frame {
    std::string id;
    std::vector<int> ranks;
  };
  std::vector<Frame> stack = {{seed, {}}};
  while (!stack.empty()) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    if (static_cast<int>(f.ranks.size()) == depth) continue;
    const Ranked kids = children(f.id);
    for (std::size_t r = 0; r < kids.size(); ++r) {
      const auto &[child, relation] = kids[r];
      if (child == f.id || exclude.count(child) || child == seed) continue;
      std::vector<int> ranks = f.ranks;
      ranks.push_back(static_cast<int>(r));
      const int d = static_cast<int>(ranks.size());
      auto it = out.nodes.find(child);
      if (it == out.nodes.end() || d < it->second.depth ||
          (d == it->second.depth && ranks < it->second.ranks)) {
        out.nodes[child] = WalkNode{d, f.id, relation, ranks};
      }
      stack.push_back({child, std::move(ranks)});
    }
  }

  // A walk can only be someone's best if its own prefix is best for the
  // parent; re-derive parents from the final table to be safe.
  std::set<std::string> parents;
  for (const auto &[id, n] : out.nodes) {
    if (id != seed) parents.insert(n.parent);
  }
  std::vector<std::pair<std::vector<int>, std::string>> leaves;
  for (const auto &[id, n] : out.nodes) {
    if (id != seed && !parents.count(id)) leaves.emplace_back(n.ranks, id);
  }
  std::sort(leaves.begin(), leaves.end());
  for (const auto &[ranks, leaf] : leaves) {
    std::vector<std::string> path;
    for (std::string cur = leaf; cur != seed; cur = out.nodes.at(cur).parent) path.push_back(cur);
    std::reverse(path.begin(), path.end());
    out.chains.push_back(std::move(path));
  }
  return out;
}

double r1(const std::vector<Node> &candidate, const std::vector<Node> &goal) {
  int total = 0;
  int hits = 0;
  for (const Node &g : goal) {
    if (!is_story_kind(g.kind)) continue;
    ++total;
    bool hit = false;
    for (const Node &c : candidate) {
      if (is_story_kind(c.kind) && c.id == g.id) hit = true;
    }
    hits += hit;
  }
  return static_cast<double>(hits) / static_cast<double>(total);
}

double r2(const std::vector<Node> &inference, const std::vector<Node> &expanded_goal) {
  int hits = 0;
  for (const Node &g : expanded_goal) {
    bool hit = false;
    for (const Node &c : inference) hit = hit || c.id == g.id;
    hits += hit;
  }
  return static_cast<double>(hits) / static_cast<double>(expanded_goal.size());
}

namespace {

struct Slot {
  std::string literal;  // empty: subject slot
  int max_masks;        // masks allowed before this slot
};

void expand(const std::vector<Slot> &slots, std::size_t at, const std::string &subject,
            std::vector<std::string> &words, std::vector<int> &runs,
            std::vector<TemplateShape> &out) {
  if (at == slots.size()) {
    // trailing run
    for (int t = 0; t <= 8; ++t) {
      std::vector<std::string> w = words;
      for (int i = 0; i < t; ++i) w.push_back("<mask>");
      std::ostringstream s;
      for (std::size_t i = 0; i < w.size(); ++i) s << (i ? " " : "") << w[i];
      std::vector<int> r = runs;
      r.push_back(t);
      out.push_back({s.str(), r});
    }
    return;
  }
  for (int m = 0; m <= slots[at].max_masks; ++m) {
    const std::size_t mark = words.size();
    for (int i = 0; i < m; ++i) words.push_back("<mask>");
    words.push_back(slots[at].literal.empty() ? subject : slots[at].literal);
    runs.push_back(m);
    expand(slots, at + 1, subject, words, runs, out);
    runs.pop_back();
    words.resize(mark);
  }
}

std::string joined(const std::vector<std::string> &v) {
  std::string s;
  for (const auto &w : v) s += (s.empty() ? "" : " ") + w;
  return s;
}

}  // namespace

std::vector<TemplateShape> enumerate_templates(const EventParts &parts,
                                               const std::vector<std::string> &subjects) {
  std::vector<std::string> subject_texts = subjects;
  subject_texts.push_back("<mask>");
  std::vector<std::string> verbs = parts.verbs;
  if (verbs.empty()) verbs.push_back("");
  std::vector<TemplateShape> out;
  for (const std::string &verb : verbs) {
    std::vector<Slot> slots = {{"", 5}};
    if (!verb.empty()) slots.push_back({verb, 2});
    if (!parts.adjectives.empty()) slots.push_back({joined(parts.adjectives), 2});
    if (!parts.nouns.empty()) slots.push_back({joined(parts.nouns), 2});
    for (const std::string &subject : subject_texts) {
      std::vector<std::string> words;
      std::vector<int> runs;
      expand(slots, 0, subject, words, runs, out);
    }
  }
  return out;
}

std::size_t closed_form_count(std::size_t verbs, bool adjectives, bool nouns,
                              std::size_t subjects) {
  std::size_t n = (verbs == 0 ? 1 : verbs) * 6 * (subjects + 1) * 9;
  if (verbs > 0) n *= 3;
  if (adjectives) n *= 3;
  if (nouns) n *= 3;
  return n;
}

std::size_t argmax_continuation(const std::vector<ContinuationCandidate> &c) {
  auto words = [](const std::string &s) {
    std::istringstream in(s);
    std::size_t n = 0;
    for (std::string w; in >> w;) ++n;
    return n;
  };
  std::size_t best = 0;
  for (std::size_t i = 1; i < c.size(); ++i) {
    const auto &a = c[i];
    const auto &b = c[best];
    if (a.log_prob > b.log_prob) {
      best = i;
    } else if (a.log_prob == b.log_prob) {
      if (words(a.text) < words(b.text) ||
          (words(a.text) == words(b.text) && a.text < b.text)) {
        best = i;
      }
    }
  }
  return best;
}

}  // namespace kgplot::oracle
