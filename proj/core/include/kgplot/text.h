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

#ifndef KGPLOT_TEXT_H_
#define KGPLOT_TEXT_H_

#include <string>
#include <string_view>
#include <vector>

namespace kgplot {

std::string to_lower(std::string_view s);

// Trims and collapses runs of whitespace to a single space.
std::string collapse_whitespace(std::string_view s);

std::vector<std::string> split_words(std::string_view s);

std::string join(const std::vector<std::string> &parts, std::string_view sep);

// Rule-based English lemmatizer for a single lower-case word: irregular
// table, plural stripping and regular verb inflection (-s, -ed, -ing).
std::string lemmatize_word(std::string_view word);

// Canonical node id for a surface string: lower-cased, punctuation removed,
// leading article dropped, each common word lemmatized, whitespace
// collapsed. Capitalized tokens are treated as names and not lemmatized.
// Returns an empty string when nothing survives.
std::string normalize_id(std::string_view surface);

// Lookup key used by fixture tables: lower-case, punctuation stripped,
// whitespace collapsed. No lemmatization.
std::string normalize_key(std::string_view text);

// Evaluation tokenizer: lower-cases, splits on whitespace and emits each
// punctuation character as its own token.
std::vector<std::string> metric_tokens(std::string_view text);

bool is_capitalized(std::string_view word);

}  // namespace kgplot

#endif  // KGPLOT_TEXT_H_
