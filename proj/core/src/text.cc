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

#include "kgplot/text.h"

#include <cctype>
#include <string>
#include <unordered_set>

#include "kgplot/lexicon.h"

namespace kgplot {
namespace {

bool is_vowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

int vowel_groups(std::string_view w) {
  int groups = 0;
  bool in_group = false;
  for (char c : w) {
    const bool v = is_vowel(c);
    if (v && !in_group) ++groups;
    in_group = v;
  }
  return groups;
}

bool has_vowel(std::string_view w) {
  for (char c : w) {
    if (is_vowel(c) || c == 'y') return true;
  }
  return false;
}

// Words that look inflected but are already lemmas.
const std::unordered_set<std::string> &lemma_exceptions() {
  static const std::unordered_set<std::string> kWords = {
      "this", "is", "was", "has", "does", "yes", "bus", "gas", "news",
      "always", "perhaps", "series", "species", "lens", "chaos", "christmas",
      "morning", "evening", "something", "nothing", "anything", "everything",
      "ceiling", "wedding", "pudding", "clothing", "during", "thing", "king",
      "ring", "sing", "spring", "string", "bring", "swing", "sting", "wing",
      "bed", "red", "shed", "sled", "need", "feed", "seed", "speed", "weed",
      "breed", "bleed", "greed", "deed", "hundred", "sacred", "naked",
      "wicked", "shoes", "toes", "canoes", "tiptoes", "physics", "lass",
      "its", "his", "hers", "ours", "yours", "theirs", "us", "as", "plus"};
  return kWords;
}

// After stripping "-ed"/"-ing", restores a silent final "e" where the stem
// shape calls for it ("liv" -> "live", "danc" -> "dance").
std::string restore_e(std::string stem) {
  const std::size_t n = stem.size();
  if (n < 2) return stem + "e";
  const char last = stem[n - 1];
  const char prev = stem[n - 2];
  if (last == 'v' || last == 'z' || last == 'u') return stem + "e";
  if (last == 'c') return stem + "e";
  if (last == 'g' && (prev == 'd' || prev == 'r')) return stem + "e";
  if (last == 's' && is_vowel(prev)) {
    // "focus" keeps its spelling; "caus" and "clos" take an "e".
    if (prev == 'u' && n >= 3 && !is_vowel(stem[n - 3])) return stem;
    return stem + "e";
  }
  if (n >= 3 && !is_vowel(stem[n - 3]) && is_vowel(prev) && !is_vowel(last) &&
      last != 'w' && last != 'x' && last != 'y' && vowel_groups(stem) == 1) {
    return stem + "e";
  }
  return stem;
}

std::string undouble_or_restore(std::string stem) {
  const std::size_t n = stem.size();
  if (n >= 3 && stem[n - 1] == stem[n - 2] && !is_vowel(stem[n - 1]) &&
      stem[n - 1] != 'l' && stem[n - 1] != 's' && stem[n - 1] != 'z' &&
      stem[n - 1] != 'f') {
    return stem.substr(0, n - 1);
  }
  return restore_e(std::move(stem));
}

}  // namespace

std::string to_lower(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

std::string collapse_whitespace(std::string_view s) {
  std::string out;
  bool pending_space = false;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

std::vector<std::string> split_words(std::string_view s) {
  std::vector<std::string> words;
  std::string cur;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) words.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) words.push_back(std::move(cur));
  return words;
}

std::string join(const std::vector<std::string> &parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out.append(sep);
    out.append(parts[i]);
  }
  return out;
}

bool is_capitalized(std::string_view word) {
  return !word.empty() && std::isupper(static_cast<unsigned char>(word[0]));
}

std::string lemmatize_word(std::string_view word) {
  std::string w(word);
  if (w.size() <= 3 || lemma_exceptions().count(w)) return w;
  if (auto base = lexicon::irregular_base(w)) return *base;

  if (ends_with(w, "ies") && w.size() > 4) return w.substr(0, w.size() - 3) + "y";
  if (ends_with(w, "sses")) return w.substr(0, w.size() - 2);
  if (ends_with(w, "ches") || ends_with(w, "shes") || ends_with(w, "xes") ||
      ends_with(w, "zes") || ends_with(w, "oes")) {
    return w.substr(0, w.size() - 2);
  }
  if (ends_with(w, "s") && !ends_with(w, "ss") && !ends_with(w, "us") &&
      !ends_with(w, "is")) {
    return w.substr(0, w.size() - 1);
  }

  if (ends_with(w, "ied") && w.size() > 4) return w.substr(0, w.size() - 3) + "y";
  if (ends_with(w, "eed")) return w;
  if (ends_with(w, "ed")) {
    std::string stem = w.substr(0, w.size() - 2);
    if (!has_vowel(stem)) return w;
    if (stem.size() <= 2) return stem + "e";
    return undouble_or_restore(std::move(stem));
  }
  if (ends_with(w, "ing")) {
    std::string stem = w.substr(0, w.size() - 3);
    if (stem.size() < 2 || !has_vowel(stem)) return w;
    if (stem.size() == 2) return stem;  // "going" -> "go", "being" -> "be"
    return undouble_or_restore(std::move(stem));
  }
  return w;
}

std::string normalize_id(std::string_view surface) {
  // Strip punctuation (keeping intra-word hyphens) and possessive "'s".
  std::string cleaned;
  cleaned.reserve(surface.size());
  for (std::size_t i = 0; i < surface.size(); ++i) {
    const char c = surface[i];
    const auto uc = static_cast<unsigned char>(c);
    if (c == '\'') {
      // Drop a possessive "s" when it ends the word.
      if (i + 1 < surface.size() &&
          (surface[i + 1] == 's' || surface[i + 1] == 'S') &&
          (i + 2 == surface.size() ||
           !std::isalnum(static_cast<unsigned char>(surface[i + 2])))) {
        ++i;
      }
      continue;
    }
    if (std::isalnum(uc) || std::isspace(uc) || (uc & 0x80)) {
      cleaned.push_back(c);
    } else if (c == '-' && !cleaned.empty() &&
               std::isalnum(static_cast<unsigned char>(cleaned.back()))) {
      cleaned.push_back(c);
    } else {
      cleaned.push_back(' ');
    }
  }

  const std::vector<std::string> toks = split_words(cleaned);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    const std::string &tok = toks[i];
    std::string lower = to_lower(tok);
    while (!lower.empty() && lower.back() == '-') lower.pop_back();
    if (lower.empty()) continue;
    // A lone article is the whole concept, not a determiner.
    if (out.empty() && i + 1 < toks.size() && (lower == "a" || lower == "an" || lower == "the")) {
      continue;
    }
    out.push_back(is_capitalized(tok) ? lower : lemmatize_word(lower));
  }
  return join(out, " ");
}

std::string normalize_key(std::string_view text) {
  std::string cleaned;
  for (char c : text) {
    const auto uc = static_cast<unsigned char>(c);
    if (std::isalnum(uc) || (uc & 0x80) || c == '<' || c == '>') {
      cleaned.push_back(static_cast<char>(std::tolower(uc)));
    } else if (c == '\'') {
      cleaned.push_back(c);
    } else {
      cleaned.push_back(' ');
    }
  }
  return collapse_whitespace(cleaned);
}

std::vector<std::string> metric_tokens(std::string_view text) {
  std::vector<std::string> tokens;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) tokens.push_back(std::move(cur));
    cur.clear();
  };
  for (char c : text) {
    const auto uc = static_cast<unsigned char>(c);
    if (std::isspace(uc)) {
      flush();
    } else if (std::ispunct(uc) && c != '\'') {
      flush();
      tokens.emplace_back(1, c);
    } else {
      cur.push_back(static_cast<char>(std::tolower(uc)));
    }
  }
  flush();
  return tokens;
}

}  // namespace kgplot
