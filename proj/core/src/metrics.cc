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

#include "kgplot/metrics.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>

#include "kgplot/error.h"
#include "kgplot/scoring.h"
#include "kgplot/text.h"

namespace kgplot {
namespace {

using Tokens = std::vector<std::string>;
using Counts = std::map<std::vector<std::string>, int>;

Counts ngrams(const Tokens &t, int k) {
  Counts c;
  for (std::size_t i = 0; i + k <= t.size(); ++i) {
    ++c[Tokens(t.begin() + i, t.begin() + i + k)];
  }
  return c;
}

void check_order(int n) {
  if (n != 2 && n != 3) throw ValidationError("BLEU order must be 2 or 3");
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10f", v);
  return buf;
}

}  // namespace

double bleu_n(std::string_view hypothesis, std::span<const std::string> references, int n) {
  check_order(n);
  const Tokens hyp = metric_tokens(hypothesis);
  if (hyp.empty()) throw ValidationError("BLEU hypothesis is empty");
  if (references.empty()) throw ValidationError("BLEU needs at least one reference");
  std::vector<Tokens> refs;
  for (const std::string &r : references) refs.push_back(metric_tokens(r));

  double log_sum = 0.0;
  for (int k = 1; k <= n; ++k) {
    const Counts hc = ngrams(hyp, k);
    Counts max_ref;
    for (const Tokens &r : refs) {
      for (const auto &[g, c] : ngrams(r, k)) max_ref[g] = std::max(max_ref[g], c);
    }
    int total = 0;
    int clipped = 0;
    for (const auto &[g, c] : hc) {
      total += c;
      auto it = max_ref.find(g);
      if (it != max_ref.end()) clipped += std::min(c, it->second);
    }
    double p = kBleuFloor;
    if (total > 0) p = (clipped > 0 ? clipped : kBleuFloor) / static_cast<double>(total);
    log_sum += std::log(p);
  }

  const auto c = static_cast<double>(hyp.size());
  double r = 0.0;
  double best_gap = std::numeric_limits<double>::infinity();
  for (const Tokens &ref : refs) {
    const auto len = static_cast<double>(ref.size());
    const double gap = std::abs(len - c);
    if (gap < best_gap || (gap == best_gap && len < r)) {
      best_gap = gap;
      r = len;
    }
  }
  const double bp = c > r ? 1.0 : std::exp(1.0 - r / c);
  return bp * std::exp(log_sum / n);
}

double self_bleu(std::span<const std::string> story, int n) {
  check_order(n);
  if (story.size() < 2) throw ValidationError("self-BLEU needs at least two sentences");
  double sum = 0.0;
  for (std::size_t i = 0; i < story.size(); ++i) {
    std::vector<std::string> others;
    for (std::size_t j = 0; j < story.size(); ++j) {
      if (j != i) others.push_back(story[j]);
    }
    sum += bleu_n(story[i], others, n);
  }
  return sum / static_cast<double>(story.size());
}

double rouge_l(std::string_view hypothesis, std::string_view reference) {
  const Tokens h = metric_tokens(hypothesis);
  const Tokens r = metric_tokens(reference);
  if (h.empty() || r.empty()) return 0.0;
  std::vector<std::vector<int>> dp(h.size() + 1, std::vector<int>(r.size() + 1, 0));
  for (std::size_t i = 1; i <= h.size(); ++i) {
    for (std::size_t j = 1; j <= r.size(); ++j) {
      dp[i][j] = h[i - 1] == r[j - 1] ? dp[i - 1][j - 1] + 1
                                      : std::max(dp[i - 1][j], dp[i][j - 1]);
    }
  }
  const double lcs = dp[h.size()][r.size()];
  if (lcs == 0.0) return 0.0;
  const double p = lcs / static_cast<double>(h.size());
  const double rec = lcs / static_cast<double>(r.size());
  return 2.0 * p * rec / (p + rec);
}

std::vector<std::string> split_sentences(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text) {
    cur.push_back(ch);
    if (ch == '.' || ch == '!' || ch == '?') {
      if (auto s = collapse_whitespace(cur); !s.empty()) out.push_back(std::move(s));
      cur.clear();
    }
  }
  if (auto s = collapse_whitespace(cur); !s.empty()) out.push_back(std::move(s));
  return out;
}

double sentence_mover(std::string_view hypothesis, std::string_view reference,
                      const EmbeddingSimilarityProvider &embed) {
  const auto a = split_sentences(hypothesis);
  const auto b = split_sentences(reference);
  if (a.empty() || b.empty()) return 0.0;
  const SimilarityMatrix m = normalize_similarity(embed.similarity(a, b));
  if (m.size() != a.size()) throw ProviderError("similarity matrix has wrong row count");
  std::vector<bool> used_a(a.size()), used_b(b.size());
  double total = 0.0;
  for (std::size_t step = 0; step < std::min(a.size(), b.size()); ++step) {
    double best = -1.0;
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (used_a[i]) continue;
      if (m[i].size() != b.size()) throw ProviderError("similarity matrix has wrong column count");
      for (std::size_t j = 0; j < b.size(); ++j) {
        if (!used_b[j] && m[i][j] > best) {
          best = m[i][j];
          bi = i;
          bj = j;
        }
      }
    }
    used_a[bi] = used_b[bj] = true;
    total += best;
  }
  return total / static_cast<double>(std::max(a.size(), b.size()));
}

MetricReport evaluate_corpus(std::span<const EvalItem> items,
                             const EmbeddingSimilarityProvider *embed) {
  MetricReport report;
  std::map<std::string, std::pair<double, int>> sums;
  auto record = [&](std::optional<double> &slot, const char *name, auto &&fn,
                    StoryMetrics &m) {
    try {
      slot = fn();
      sums[name].first += *slot;
      sums[name].second += 1;
    } catch (const Error &e) {
      m.errors.push_back(std::string(name) + ": " + e.what());
    }
  };
  for (const EvalItem &item : items) {
    StoryMetrics m;
    m.id = item.id;
    const std::string text = join(item.sentences, " ");
    m.tokens = metric_tokens(text).size();
    report.total_tokens += m.tokens;
    record(m.self_bleu2, "self_bleu2", [&] { return self_bleu(item.sentences, 2); }, m);
    record(m.self_bleu3, "self_bleu3", [&] { return self_bleu(item.sentences, 3); }, m);
    if (item.reference) {
      const std::vector<std::string> refs = {*item.reference};
      record(m.bleu2, "bleu2", [&] { return bleu_n(text, refs, 2); }, m);
      record(m.bleu3, "bleu3", [&] { return bleu_n(text, refs, 3); }, m);
      record(m.rouge_l, "rouge_l", [&] { return rouge_l(text, *item.reference); }, m);
      if (embed) {
        record(m.sentence_mover, "sentence_mover",
               [&] { return sentence_mover(text, *item.reference, *embed); }, m);
      }
    }
    report.stories.push_back(std::move(m));
  }
  for (const char *name :
       {"bleu2", "bleu3", "self_bleu2", "self_bleu3", "rouge_l", "sentence_mover"}) {
    auto it = sums.find(name);
    if (it != sums.end()) {
      report.corpus_means.emplace_back(name, it->second.first / it->second.second);
    }
  }
  return report;
}

nlohmann::json MetricReport::to_json() const {
  nlohmann::json stories_json = nlohmann::json::array();
  auto opt = [](const std::optional<double> &v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
  };
  for (const StoryMetrics &m : stories) {
    stories_json.push_back({{"id", m.id},
                            {"tokens", m.tokens},
                            {"bleu2", opt(m.bleu2)},
                            {"bleu3", opt(m.bleu3)},
                            {"self_bleu2", opt(m.self_bleu2)},
                            {"self_bleu3", opt(m.self_bleu3)},
                            {"rouge_l", opt(m.rouge_l)},
                            {"sentence_mover", opt(m.sentence_mover)},
                            {"errors", m.errors}});
  }
  nlohmann::json means = nlohmann::json::object();
  for (const auto &[name, v] : corpus_means) means[name] = v;
  return {{"stories", std::move(stories_json)}, {"corpus", means}, {"total_tokens", total_tokens}};
}

std::string MetricReport::to_csv() const {
  std::ostringstream out;
  out << "id,tokens,bleu2,bleu3,self_bleu2,self_bleu3,rouge_l,sentence_mover\n";
  auto cell = [](const std::optional<double> &v) { return v ? fmt(*v) : std::string(); };
  for (const StoryMetrics &m : stories) {
    out << m.id << ',' << m.tokens << ',' << cell(m.bleu2) << ',' << cell(m.bleu3) << ','
        << cell(m.self_bleu2) << ',' << cell(m.self_bleu3) << ',' << cell(m.rouge_l) << ','
        << cell(m.sentence_mover) << '\n';
  }
  std::map<std::string, double> means(corpus_means.begin(), corpus_means.end());
  auto mean_cell = [&](const char *name) {
    auto it = means.find(name);
    return it == means.end() ? std::string() : fmt(it->second);
  };
  out << "mean," << total_tokens << ',' << mean_cell("bleu2") << ',' << mean_cell("bleu3")
      << ',' << mean_cell("self_bleu2") << ',' << mean_cell("self_bleu3") << ','
      << mean_cell("rouge_l") << ',' << mean_cell("sentence_mover") << '\n';
  return out.str();
}

}  // namespace kgplot
