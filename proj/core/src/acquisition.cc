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

#include "kgplot/acquisition.h"

#include <array>
#include <cctype>

#include "kgplot/error.h"
#include "kgplot/lexicon.h"
#include "kgplot/text.h"

namespace kgplot {
namespace {

constexpr std::array<std::string_view, 27> kVerbAtlasRoles = {
    "agent",       "asset",       "attribute", "beneficiary", "cause",
    "co-agent",    "co-patient",  "co-theme",  "destination", "experiencer",
    "extent",      "goal",        "idiom",     "instrument",  "location",
    "material",    "patient",     "product",   "purpose",     "recipient",
    "result",      "source",      "stimulus",  "theme",       "time",
    "topic",       "value"};

// Roles eligible to be the subject of a triple, most preferred first.
constexpr std::array<std::string_view, 8> kSubjectPriority = {
    "agent", "experiencer", "cause", "theme", "patient", "stimulus", "topic", "co-agent"};

std::string strip_edge_punct(std::string_view tok) {
  std::size_t b = 0, e = tok.size();
  while (b < e && std::ispunct(static_cast<unsigned char>(tok[b]))) ++b;
  while (e > b && std::ispunct(static_cast<unsigned char>(tok[e - 1]))) --e;
  std::string out(tok.substr(b, e - b));
  if (out.size() > 2 && out.compare(out.size() - 2, 2, "'s") == 0) out.resize(out.size() - 2);
  return out;
}

enum class PronounClass { kMale, kFemale, kPlural, kThing };

std::optional<PronounClass> pronoun_class(std::string_view lower) {
  if (lower == "he" || lower == "him" || lower == "his" || lower == "himself") {
    return PronounClass::kMale;
  }
  if (lower == "she" || lower == "her" || lower == "hers" || lower == "herself") {
    return PronounClass::kFemale;
  }
  if (lower == "they" || lower == "them" || lower == "their" || lower == "theirs" ||
      lower == "themselves") {
    return PronounClass::kPlural;
  }
  if (lower == "it" || lower == "its" || lower == "itself") return PronounClass::kThing;
  return std::nullopt;
}

bool looks_like_name(const std::string &tok, bool sentence_initial) {
  if (!is_capitalized(tok)) return false;
  const std::string lower = to_lower(tok);
  if (lexicon::is_closed_class(lower)) return false;
  if (lexicon::name_gender(lower)) return true;
  if (!sentence_initial) return true;
  return !lexicon::is_known_verb(lower) && !lexicon::is_known_noun(lower) &&
         !lexicon::is_known_adjective(lower) && !lexicon::irregular_base(lower);
}

struct Antecedent {
  std::string id;
  std::string surface;
  std::optional<lexicon::Gender> gender;
};

// Resolves one argument text to its node.
Node resolve_argument(const std::string &text, const CorefMap &coref) {
  if (auto id = coref.lookup(text)) {
    Node n;
    n.id = *id;
    n.surface = coref.surface_of(*id).value_or(collapse_whitespace(text));
    n.kind = NodeKind::kStoryEntity;
    return n;
  }
  return Node::story(text);
}

}  // namespace

void CorefMap::add(std::string mention, std::string canonical_id,
                   std::string canonical_surface) {
  if (!canonical_surface.empty()) surfaces_.try_emplace(canonical_id, canonical_surface);
  mentions_.try_emplace(std::move(mention), std::move(canonical_id));
}

std::optional<std::string> CorefMap::lookup(std::string_view mention) const {
  const std::string trimmed = collapse_whitespace(mention);
  if (auto it = mentions_.find(trimmed); it != mentions_.end()) return it->second;
  const std::string lower = to_lower(trimmed);
  for (const auto &[m, id] : mentions_) {
    if (to_lower(m) == lower) return id;
  }
  return std::nullopt;
}

std::optional<std::string> CorefMap::surface_of(std::string_view id) const {
  auto it = surfaces_.find(id);
  if (it == surfaces_.end()) return std::nullopt;
  return it->second;
}

CorefMap rule_coref(std::span<const std::string> sentences) {
  CorefMap map;
  std::vector<Antecedent> seen;  // most recent last
  int unknown = 0;

  for (const std::string &sentence : sentences) {
    bool initial = true;
    for (const std::string &raw : split_words(sentence)) {
      const std::string tok = strip_edge_punct(raw);
      if (tok.empty()) continue;
      const std::string lower = to_lower(tok);
      const bool was_initial = initial;
      initial = false;

      if (auto cls = pronoun_class(lower)) {
        if (map.lookup(tok)) continue;
        const Antecedent *found = nullptr;
        for (auto it = seen.rbegin(); it != seen.rend() && !found; ++it) {
          switch (*cls) {
            case PronounClass::kMale:
              if (it->gender == lexicon::Gender::kMale) found = &*it;
              break;
            case PronounClass::kFemale:
              if (it->gender == lexicon::Gender::kFemale) found = &*it;
              break;
            case PronounClass::kPlural:
              found = &*it;
              break;
            case PronounClass::kThing:
              if (!it->gender) found = &*it;
              break;
          }
        }
        if (found) {
          map.add(tok, found->id, found->surface);
        } else {
          map.add(tok, "unknown_" + std::to_string(unknown++), tok);
        }
        continue;
      }

      if (looks_like_name(tok, was_initial)) {
        Antecedent a{lower, tok, lexicon::name_gender(lower)};
        map.add(tok, a.id, a.surface);
        seen.push_back(std::move(a));
      }
    }
  }
  return map;
}

bool is_verbatlas_role(std::string_view role) {
  const std::string lower = to_lower(role);
  for (std::string_view r : kVerbAtlasRoles) {
    if (r == lower) return true;
  }
  return false;
}

SrlConversion srl_to_triples(const SrlRecord &record, const CorefMap &coref) {
  if (collapse_whitespace(record.frame).empty()) {
    throw ValidationError("SRL record has an empty frame");
  }

  // Filled VerbAtlas roles in role-name order.
  std::vector<std::pair<std::string, Node>> filled;
  for (const auto &[role, text] : record.args) {
    if (!is_verbatlas_role(role)) continue;
    Node n = resolve_argument(text, coref);
    if (n.id.empty()) continue;
    filled.emplace_back(to_lower(role), std::move(n));
  }

  SrlConversion out;
  if (filled.empty()) return out;

  std::size_t subject_at = 0;
  bool chosen = false;
  for (std::string_view wanted : kSubjectPriority) {
    for (std::size_t i = 0; i < filled.size() && !chosen; ++i) {
      if (filled[i].first == wanted) {
        subject_at = i;
        chosen = true;
      }
    }
    if (chosen) break;
  }

  const Node &subject = filled[subject_at].second;
  out.subject = subject;
  if (filled.size() == 1) {
    out.lone_nodes.push_back(subject);
    return out;
  }
  for (std::size_t i = 0; i < filled.size(); ++i) {
    if (i == subject_at) continue;
    const Node &object = filled[i].second;
    if (object.id == subject.id) continue;
    out.triples.push_back({Triple{subject.id, record.frame, object.id}, subject, object});
  }
  if (out.triples.empty()) out.lone_nodes.push_back(subject);
  return out;
}

AcquiredSentences acquire(std::span<const std::string> story, std::size_t first,
                          const SrlProvider &srl, const CorefProvider &coref) {
  AcquiredSentences out;
  const CorefMap map = coref.resolve(story);
  for (std::size_t i = first; i < story.size(); ++i) {
    std::vector<SrlRecord> records;
    try {
      records = srl.parse(story[i], static_cast<int>(i));
    } catch (const ProviderError &e) {
      throw ProviderError("SRL failed for sentence " + std::to_string(i) + ": " + e.what());
    }
    std::vector<Node> subjects;
    for (SrlRecord &rec : records) {
      rec.sentence_index = static_cast<int>(i);
      SrlConversion conv = srl_to_triples(rec, map);
      for (const auto &ct : conv.triples) {
        out.graph.insert_triple(ct.triple, ct.subject, ct.object);
      }
      for (const Node &n : conv.lone_nodes) out.graph.insert_node(n);
      if (conv.subject) subjects.push_back(*conv.subject);
    }
    out.subjects.push_back(std::move(subjects));
  }
  return out;
}

KnowledgeGraph build_graph(std::span<const std::string> sentences, const SrlProvider &srl,
                           const CorefProvider &coref) {
  if (sentences.empty()) throw ValidationError("build_graph needs at least one sentence");
  return acquire(sentences, 0, srl, coref).graph;
}

}  // namespace kgplot
