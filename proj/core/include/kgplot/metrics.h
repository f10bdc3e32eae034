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

#ifndef KGPLOT_METRICS_H_
#define KGPLOT_METRICS_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "kgplot/providers.h"

namespace kgplot {

// Stand-in for a zero n-gram match count (and for an order with no n-grams
// at all), so short sentences do not collapse the geometric mean to 0.
inline constexpr double kBleuFloor = 1e-9;

// Sentence BLEU with uniform weights over orders 1..n and the closest
// reference length (shorter on ties) for the brevity penalty.
double bleu_n(std::string_view hypothesis, std::span<const std::string> references, int n);

// Mean over sentences of BLEU against all the other sentences.
double self_bleu(std::span<const std::string> story, int n);

// LCS-based F1 over metric tokens.
double rouge_l(std::string_view hypothesis, std::string_view reference);

// Splits on '.', '!' and '?' keeping the terminator.
std::vector<std::string> split_sentences(std::string_view text);

// Greedy sentence matching: repeatedly pair the most similar unmatched
// hypothesis and reference sentences, then divide the summed similarity by
// the larger sentence count.
double sentence_mover(std::string_view hypothesis, std::string_view reference,
                      const EmbeddingSimilarityProvider &embed);

struct EvalItem {
  std::string id;
  std::vector<std::string> sentences;
  std::optional<std::string> reference;
};

struct StoryMetrics {
  std::string id;
  std::size_t tokens = 0;
  std::optional<double> bleu2, bleu3, self_bleu2, self_bleu3, rouge_l, sentence_mover;
  std::vector<std::string> errors;
};

struct MetricReport {
  std::vector<StoryMetrics> stories;
  // Mean of each metric over the stories that have it.
  std::vector<std::pair<std::string, double>> corpus_means;
  std::size_t total_tokens = 0;

  nlohmann::json to_json() const;
  std::string to_csv() const;
};

MetricReport evaluate_corpus(std::span<const EvalItem> items,
                             const EmbeddingSimilarityProvider *embed = nullptr);

}  // namespace kgplot

#endif  // KGPLOT_METRICS_H_
