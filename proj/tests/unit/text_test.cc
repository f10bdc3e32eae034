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

#include <gtest/gtest.h>

#include "fixture_world.h"
#include "kgplot/lexicon.h"
#include "kgplot/text.h"

namespace kgplot {
namespace {

TEST(NormalizeId, LowercasesAndLemmatizes) {
  EXPECT_EQ(normalize_id("Jenny"), "jenny");
  EXPECT_EQ(normalize_id("the beaches"), "beach");
  EXPECT_EQ(normalize_id("  Go   to the BEACH "), "go to the beach");
  EXPECT_EQ(normalize_id("went"), "go");
  EXPECT_EQ(normalize_id("Jenny lived in Florida."), "jenny live in florida");
  EXPECT_EQ(normalize_id("dishes"), "dish");
  EXPECT_EQ(normalize_id("stories"), "story");
}

TEST(NormalizeId, DropsPossessiveAndLeadingArticle) {
  EXPECT_EQ(normalize_id("Jenny's"), "jenny");
  EXPECT_EQ(normalize_id("a gift"), "gift");
  EXPECT_EQ(normalize_id("An apple"), "apple");
  EXPECT_EQ(normalize_id("..."), "");
}

TEST(NormalizeId, NamesAreNotLemmatized) {
  EXPECT_EQ(normalize_id("James"), "james");
  EXPECT_EQ(normalize_id("james"), "jame");
}

TEST(NormalizeId, IsIdempotentOnWorldVocabulary) {
  for (const auto &w : world::entity_words()) EXPECT_EQ(normalize_id(w), w);
  for (const auto &w : world::event_phrases()) EXPECT_EQ(normalize_id(w), w);
  for (const auto &w : world::event_phrases()) EXPECT_EQ(normalize_id(normalize_id(w)), normalize_id(w));
}

TEST(Lemmatize, RegularInflections) {
  EXPECT_EQ(lemmatize_word("swimming"), "swim");
  EXPECT_EQ(lemmatize_word("baked"), "bake");
  EXPECT_EQ(lemmatize_word("stopped"), "stop");
  EXPECT_EQ(lemmatize_word("carried"), "carry");
  EXPECT_EQ(lemmatize_word("glass"), "glass");
  EXPECT_EQ(lemmatize_word("need"), "need");
}

TEST(NormalizeKey, KeepsMaskSentinelAndDropsPunctuation) {
  EXPECT_EQ(normalize_key("Jenny <mask> went, to the beach!"), "jenny <mask> went to the beach");
  EXPECT_EQ(normalize_key("Jenny lived in Florida."), "jenny lived in florida");
}

TEST(MetricTokens, SplitsPunctuation) {
  const std::vector<std::string> expected = {"the", "cat", ",", "sat", "."};
  EXPECT_EQ(metric_tokens("The cat, sat."), expected);
  EXPECT_TRUE(metric_tokens("   ").empty());
}

TEST(Lexicon, Conjugation) {
  EXPECT_EQ(lexicon::past_tense("get"), "got");
  EXPECT_EQ(lexicon::past_tense("swim"), "swam");
  EXPECT_EQ(lexicon::past_tense("enjoy"), "enjoyed");
  EXPECT_EQ(lexicon::past_tense("carry"), "carried");
  EXPECT_EQ(lexicon::past_tense("stop"), "stopped");
  EXPECT_EQ(lexicon::third_person("get"), "gets");
  EXPECT_EQ(lexicon::third_person("go"), "goes");
  EXPECT_EQ(lexicon::third_person("watch"), "watches");
  EXPECT_EQ(lexicon::third_person("cry"), "cries");
}

TEST(Lexicon, PastDetection) {
  EXPECT_TRUE(lexicon::looks_past("lived"));
  EXPECT_TRUE(lexicon::looks_past("went"));
  EXPECT_FALSE(lexicon::looks_past("need"));
  EXPECT_FALSE(lexicon::looks_past("lives"));
}

TEST(Lexicon, NameGender) {
  EXPECT_EQ(lexicon::name_gender("Jenny"), lexicon::Gender::kFemale);
  EXPECT_EQ(lexicon::name_gender("Bob"), lexicon::Gender::kMale);
  EXPECT_FALSE(lexicon::name_gender("Florida").has_value());
}

}  // namespace
}  // namespace kgplot
