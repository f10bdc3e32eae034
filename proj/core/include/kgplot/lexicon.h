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

#ifndef KGPLOT_LEXICON_H_
#define KGPLOT_LEXICON_H_

#include <optional>
#include <string>
#include <string_view>

// Small bundled English word tables used by the rule-based NLP helpers.
namespace kgplot::lexicon {

enum class Gender { kMale, kFemale };

// Determiners, prepositions, pronouns, conjunctions and auxiliaries.
bool is_closed_class(std::string_view lower_word);

bool is_known_verb(std::string_view base);
bool is_known_adjective(std::string_view lower_word);
bool is_known_noun(std::string_view lower_word);

// Base form for an irregular inflected form ("went" -> "go").
std::optional<std::string> irregular_base(std::string_view lower_word);

std::string past_tense(std::string_view base);
std::string third_person(std::string_view base);

// True if the word is an inflected past form, irregular or regular "-ed".
bool looks_past(std::string_view lower_word);

std::optional<Gender> name_gender(std::string_view name);

bool is_third_person_pronoun(std::string_view lower_word);

}  // namespace kgplot::lexicon

#endif  // KGPLOT_LEXICON_H_
