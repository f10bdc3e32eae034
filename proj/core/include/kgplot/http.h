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

#ifndef KGPLOT_HTTP_H_
#define KGPLOT_HTTP_H_

#include <atomic>
#include <cstdint>
#include <memory>
#include <semaphore>
#include <string>

#include <nlohmann/json.hpp>

#include "kgplot/providers.h"

namespace kgplot {

struct ProviderEndpointConfig {
  std::string base_url = "http://127.0.0.1:8000";
  int timeout_ms = 30000;
  int retries = 2;
  std::uint64_t request_id_seed = 0;
  int max_in_flight = 8;

  void validate() const;
};

// Talks to a model service over the JSON wire protocol. Transient failures
// (connection errors, timeouts, 5xx, 429) are retried up to `retries`
// times; schema violations and other statuses are not.
class HttpBackend final : public SrlProvider,
                          public EventInferenceProvider,
                          public InfillProvider,
                          public SequenceScorerProvider,
                          public EmbeddingSimilarityProvider {
 public:
  explicit HttpBackend(ProviderEndpointConfig config);

  ProviderSet providers() const;
  const ProviderEndpointConfig &config() const { return config_; }

  // POSTs `body` (with a fresh request_id) and returns the validated JSON
  // object. Exposed for contract tests.
  nlohmann::json call(const std::string &path, nlohmann::json body) const;

  std::vector<SrlRecord> parse(std::string_view sentence, int index) const override;
  std::vector<EventInference> infer(std::string_view text,
                                    std::span<const std::string> relations,
                                    int beam) const override;
  InfillResult infill(std::string_view context,
                      std::string_view masked_template) const override;
  std::vector<double> token_logprobs(std::string_view context,
                                     std::string_view continuation) const override;
  SimilarityMatrix similarity(std::span<const std::string> a,
                              std::span<const std::string> b) const override;

 private:
  nlohmann::json post_once(const std::string &path, const std::string &payload,
                           const std::string &request_id) const;

  ProviderEndpointConfig config_;
  mutable std::atomic<std::uint64_t> next_id_;
  std::unique_ptr<std::counting_semaphore<256>> in_flight_;
};

}  // namespace kgplot

#endif  // KGPLOT_HTTP_H_
