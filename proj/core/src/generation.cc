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

#include "kgplot/generation.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <tuple>

#include "kgplot/error.h"
#include "kgplot/lexicon.h"
#include "kgplot/text.h"

namespace kgplot {
namespace {

bool ends_with(std::string_view w, std::string_view suffix) {
  return w.size() > suffix.size() + 2 && w.substr(w.size() - suffix.size()) == suffix;
}

bool adjective_like(std::string_view w) {
  if (lexicon::is_known_adjective(w)) return true;
  if (lexicon::is_known_noun(w)) return false;
  for (std::string_view suf : {"ful", "ous", "ive", "able", "ible", "less", "ish"}) {
    if (ends_with(w, suf)) return true;
  }
  return false;
}

std::string base_form(const std::string &w) {
  if (auto base = lexicon::irregular_base(w)) return *base;
  return lemmatize_word(w);
}

std::string conjugate(const std::string &base, Tense tense) {
  return tense == Tense::kPast ? lexicon::past_tense(base) : lexicon::third_person(base);
}

void push_masks(std::vector<TemplateToken> &tokens, int n) {
  for (int i = 0; i < n; ++i) tokens.push_back({TemplateToken::Kind::kMask, ""});
}

std::size_t token_count(std::string_view text) { return split_words(text).size(); }

}  // namespace

Tense detect_tense(std::string_view text) {
  for (const std::string &w : split_words(normalize_key(text))) {
    if (lexicon::looks_past(w)) return Tense::kPast;
  }
  return Tense::kPresent;
}

void EventParts::validate() const {
  if (verbs.empty() && nouns.empty() && adjectives.empty()) {
    throw ValidationError("event has no verb, noun or adjective");
  }
}

EventParts decompose_event(std::string_view event, Tense context_tense) {
  if (collapse_whitespace(event).empty()) throw ValidationError("event text is empty");
  std::vector<std::string> content;
  for (const std::string &w : split_words(normalize_key(event))) {
    if (!lexicon::is_closed_class(w)) content.push_back(w);
  }
  if (content.empty()) {
    throw ValidationError("event '" + std::string(event) + "' has no content words");
  }
  EventParts parts;
  parts.tense = context_tense;
  for (std::size_t i = 0; i < content.size(); ++i) {
    const std::string &w = content[i];
    const std::string base = base_form(w);
    const bool verb =
        i == 0 ? lexicon::is_known_verb(base) ||
                     (!lexicon::is_known_noun(w) && !adjective_like(w))
               : lexicon::is_known_verb(base) && !lexicon::is_known_noun(w) &&
                     !lexicon::is_known_adjective(w);
    if (verb) {
      parts.verbs.push_back(conjugate(base, context_tense));
    } else if (adjective_like(w)) {
      parts.adjectives.push_back(w);
    } else {
      parts.nouns.push_back(w);
    }
  }
  return parts;
}

std::string Template::render() const {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const TemplateToken &t : tokens) {
    if (t.kind == TemplateToken::Kind::kMask ||
        (t.kind == TemplateToken::Kind::kSubject && t.text.empty())) {
      out.emplace_back(kMaskToken);
    } else {
      out.push_back(t.text);
    }
  }
  return join(out, " ");
}

int Template::mask_count() const {
  int n = 0;
  for (const TemplateToken &t : tokens) {
    n += t.kind == TemplateToken::Kind::kMask ||
         (t.kind == TemplateToken::Kind::kSubject && t.text.empty());
  }
  return n;
}

std::vector<Template> make_templates(const EventParts &parts,
                                     std::span<const SubjectChoice> subjects) {
  parts.validate();
  std::vector<SubjectChoice> choices(subjects.begin(), subjects.end());
  choices.push_back(SubjectChoice::masked());

  const std::string adjectives = join(parts.adjectives, " ");
  const std::string nouns = join(parts.nouns, " ");
  std::vector<std::string> verbs = parts.verbs;
  const bool has_verb = !verbs.empty();
  if (!has_verb) verbs.emplace_back();

  // A slot that is absent contributes a single "run" of -1.
  auto range = [](bool present, int max) {
    std::vector<int> r;
    if (!present) return std::vector<int>{-1};
    for (int i = 0; i <= max; ++i) r.push_back(i);
    return r;
  };
  const auto before_verb = range(has_verb, kMaxInnerMasks);
  const auto before_adj = range(!adjectives.empty(), kMaxInnerMasks);
  const auto before_noun = range(!nouns.empty(), kMaxInnerMasks);

  std::vector<Template> out;
  out.reserve(template_count(parts, subjects.size()));
  for (const std::string &verb : verbs) {
    for (int lead = 0; lead <= kMaxLeadMasks; ++lead) {
      for (const SubjectChoice &subject : choices) {
        for (int bv : before_verb) {
          for (int ba : before_adj) {
            for (int bn : before_noun) {
              for (int trail = 0; trail <= kMaxTrailingMasks; ++trail) {
                Template t;
                t.subject = subject;
                t.runs = {lead, bv, ba, bn, trail};
                push_masks(t.tokens, lead);
                t.tokens.push_back({TemplateToken::Kind::kSubject, subject.name});
                if (has_verb) {
                  push_masks(t.tokens, bv);
                  t.tokens.push_back({TemplateToken::Kind::kLiteral, verb});
                }
                if (ba >= 0) {
                  push_masks(t.tokens, ba);
                  t.tokens.push_back({TemplateToken::Kind::kLiteral, adjectives});
                }
                if (bn >= 0) {
                  push_masks(t.tokens, bn);
                  t.tokens.push_back({TemplateToken::Kind::kLiteral, nouns});
                }
                push_masks(t.tokens, trail);
                out.push_back(std::move(t));
              }
            }
          }
        }
      }
    }
  }
  return out;
}

std::size_t template_count(const EventParts &parts, std::size_t n_subjects) {
  const std::size_t inner = kMaxInnerMasks + 1;
  std::size_t n = std::max<std::size_t>(parts.verbs.size(), 1);
  n *= kMaxLeadMasks + 1;
  n *= n_subjects + 1;
  if (!parts.verbs.empty()) n *= inner;
  if (!parts.adjectives.empty()) n *= inner;
  if (!parts.nouns.empty()) n *= inner;
  return n * (kMaxTrailingMasks + 1);
}

std::vector<Template> downsample_templates(std::vector<Template> templates, std::size_t cap) {
  if (cap == 0) throw ValidationError("template cap must be >= 1");
  if (templates.size() <= cap) return templates;

  std::map<int, std::vector<std::size_t>> strata;
  for (std::size_t i = 0; i < templates.size(); ++i) {
    strata[templates[i].mask_count()].push_back(i);
  }
  // Water-filling: smaller strata are served first so any quota they cannot
  // use flows to the larger ones.
  std::vector<const std::vector<std::size_t> *> order;
  for (const auto &[masks, members] : strata) order.push_back(&members);
  std::stable_sort(order.begin(), order.end(),
                   [](const auto *a, const auto *b) { return a->size() < b->size(); });

  std::vector<std::size_t> keep;
  std::size_t remaining = cap;
  for (std::size_t s = 0; s < order.size(); ++s) {
    const std::vector<std::size_t> &members = *order[s];
    const std::size_t quota = std::min(members.size(), remaining / (order.size() - s));
    for (std::size_t i = 0; i < quota; ++i) keep.push_back(members[i * members.size() / quota]);
    remaining -= quota;
  }
  std::sort(keep.begin(), keep.end());

  std::vector<Template> out;
  out.reserve(keep.size());
  for (std::size_t i : keep) out.push_back(std::move(templates[i]));
  return out;
}

std::vector<SubjectChoice> subject_choices(std::span<const std::string> previous,
                                           std::span<const std::string> characters) {
  std::vector<SubjectChoice> out;
  auto seen = [&](const std::string &name) {
    return std::any_of(out.begin(), out.end(),
                       [&](const SubjectChoice &c) { return c.name == name; });
  };
  for (const std::string &name : previous) {
    if (!name.empty() && !seen(name)) {
      out.push_back({SubjectChoice::Kind::kPriorSubject, name});
    }
  }
  for (const std::string &name : characters) {
    if (!name.empty() && !seen(name)) {
      out.push_back({SubjectChoice::Kind::kAnyPriorCharacter, name});
    }
  }
  return out;
}

std::vector<ContinuationCandidate> fill_templates(std::span<const Template> templates,
                                                  std::string_view context,
                                                  const InfillProvider &infill) {
  if (templates.empty()) throw ValidationError("no templates to fill");
  std::vector<ContinuationCandidate> out;
  for (std::size_t i = 0; i < templates.size(); ++i) {
    const Template &t = templates[i];
    const std::string rendered = t.render();
    std::string filled;
    if (t.mask_count() == 0) {
      filled = rendered;
    } else {
      try {
        filled = collapse_whitespace(infill.infill(context, rendered).filled);
      } catch (const Error &e) {
        throw GenerationError("infilling template " + std::to_string(i) + " failed: " +
                              e.what());
      }
    }
    if (filled.empty() || filled.find(kMaskToken) != std::string::npos) continue;
    out.push_back({std::move(filled), t, 0.0});
  }
  return out;
}

double score_sentence(std::string_view context, std::string_view sentence,
                      const SequenceScorerProvider &scorer) {
  if (collapse_whitespace(sentence).empty()) throw ValidationError("sentence is empty");
  double total = 0.0;
  for (double lp : scorer.token_logprobs(context, sentence)) {
    if (lp > 0.0) throw ProviderError("token log-probability is positive");
    total += lp;
  }
  return total;
}

ContinuationCandidate select_continuation(std::span<const ContinuationCandidate> candidates) {
  if (candidates.empty()) throw GenerationError("no continuation candidates");
  auto key = [](const ContinuationCandidate &c) {
    return std::make_tuple(-c.log_prob, token_count(c.text), std::cref(c.text));
  };
  const ContinuationCandidate *best = &candidates.front();
  for (const ContinuationCandidate &c : candidates.subspan(1)) {
    if (key(c) < key(*best)) best = &c;
  }
  return *best;
}

std::string finish_sentence(std::string_view text) {
  std::string s = collapse_whitespace(text);
  if (s.empty()) return s;
  s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  const char last = s.back();
  if (last != '.' && last != '!' && last != '?') s.push_back('.');
  return s;
}

ContinuationCandidate generate_continuation(std::string_view event,
                                            std::span<const std::string> story,
                                            std::span<const SubjectChoice> subjects,
                                            const InfillProvider &infill,
                                            const SequenceScorerProvider &scorer,
                                            const GenerationConfig &config) {
  if (story.empty()) throw ValidationError("story history is empty");
  const EventParts parts = decompose_event(event, detect_tense(story.front()));
  const std::vector<Template> templates =
      downsample_templates(make_templates(parts, subjects), config.template_cap);
  const std::string context = join(std::vector<std::string>(story.begin(), story.end()), " ");
  std::vector<ContinuationCandidate> candidates = fill_templates(templates, context, infill);
  if (candidates.empty()) {
    throw GenerationError("no usable fill for event '" + std::string(event) + "'");
  }
  for (ContinuationCandidate &c : candidates) {
    try {
      c.log_prob = score_sentence(context, c.text, scorer);
    } catch (const ProviderError &e) {
      throw GenerationError(std::string("scoring failed: ") + e.what());
    }
  }
  ContinuationCandidate best = select_continuation(candidates);
  best.text = finish_sentence(best.text);
  return best;
}

}  // namespace kgplot
