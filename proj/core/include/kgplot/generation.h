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

#ifndef KGPLOT_GENERATION_H_
#define KGPLOT_GENERATION_H_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kgplot/providers.h"

namespace kgplot {

enum class Tense { kPast, kPresent };

// Past if any word of the text is an inflected past form.
Tense detect_tense(std::string_view text);

struct EventParts {
  std::vector<std::string> verbs;  // conjugated
  std::vector<std::string> nouns;
  std::vector<std::string> adjectives;
  Tense tense = Tense::kPast;

  void validate() const;
  bool operator==(const EventParts &) const = default;
};

EventParts decompose_event(std::string_view event, Tense context_tense);

struct SubjectChoice {
  enum class Kind { kPriorSubject, kAnyPriorCharacter, kMasked };
  Kind kind = Kind::kMasked;
  std::string name;

  static SubjectChoice masked() { return {}; }
  bool operator==(const SubjectChoice &) const = default;
};

struct TemplateToken {
  enum class Kind { kLiteral, kMask, kSubject };
  Kind kind = Kind::kLiteral;
  std::string text;  // literal text, or the subject name (empty when masked)

  bool operator==(const TemplateToken &) const = default;
};

// Mask run lengths per slot; -1 marks a slot absent for this event shape.
struct MaskRuns {
  int lead = 0;
  int before_verb = -1;
  int before_adjectives = -1;
  int before_nouns = -1;
  int trailing = 0;

  bool operator==(const MaskRuns &) const = default;
};

struct Template {
  std::vector<TemplateToken> tokens;
  SubjectChoice subject;
  MaskRuns runs;

  // Tokens joined by spaces; masks and a masked subject render as <mask>.
  std::string render() const;
  int mask_count() const;
  bool operator==(const Template &) const = default;
};

inline constexpr int kMaxLeadMasks = 5;
inline constexpr int kMaxInnerMasks = 2;
inline constexpr int kMaxTrailingMasks = 8;

// Every rule combination, enumerated odometer-style (verb outermost, then
// lead, subject, the inner runs, trailing fastest). A masked subject is
// always offered after the given choices.
std::vector<Template> make_templates(const EventParts &parts,
                                     std::span<const SubjectChoice> subjects);

// Closed-form size of make_templates().
std::size_t template_count(const EventParts &parts, std::size_t n_subjects);

// Keeps at most `cap` templates, spread evenly across strata of equal
// mask count; the survivors keep their original order.
std::vector<Template> downsample_templates(std::vector<Template> templates, std::size_t cap);

// Subject choices for the next sentence: the previous sentence's subjects,
// then every other earlier character in order of first appearance.
std::vector<SubjectChoice> subject_choices(std::span<const std::string> previous,
                                           std::span<const std::string> characters);

struct ContinuationCandidate {
  std::string text;
  Template source;
  double log_prob = 0.0;
};

std::vector<ContinuationCandidate> fill_templates(std::span<const Template> templates,
                                                  std::string_view context,
                                                  const InfillProvider &infill);

double score_sentence(std::string_view context, std::string_view sentence,
                      const SequenceScorerProvider &scorer);

// Highest log-probability; ties go to fewer tokens, then lexicographic text.
ContinuationCandidate select_continuation(std::span<const ContinuationCandidate> candidates);

// Capitalizes the first letter and adds a full stop when no terminal
// punctuation is present.
std::string finish_sentence(std::string_view text);

struct GenerationConfig {
  std::size_t template_cap = 512;
};

// Best sentence for `event` continuing `story`, using the prompt's tense.
ContinuationCandidate generate_continuation(std::string_view event,
                                            std::span<const std::string> story,
                                            std::span<const SubjectChoice> subjects,
                                            const InfillProvider &infill,
                                            const SequenceScorerProvider &scorer,
                                            const GenerationConfig &config = {});

}  // namespace kgplot

#endif  // KGPLOT_GENERATION_H_
