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

#ifndef KGPLOT_WIRE_H_
#define KGPLOT_WIRE_H_

#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "kgplot/providers.h"

// JSON codec for the model-service protocol. Every decode_* function
// validates the payload shape and throws TransportError(kSchema) on
// violation.
namespace kgplot::wire {

inline constexpr const char *kInferEventsPath = "/v1/infer_events";
inline constexpr const char *kInfillPath = "/v1/infill";
inline constexpr const char *kScorePath = "/v1/score";
inline constexpr const char *kSimilarityPath = "/v1/similarity";
inline constexpr const char *kSrlPath = "/v1/srl";
inline constexpr const char *kHealthPath = "/v1/health";

nlohmann::json encode_infer_events_request(std::string_view text,
                                           std::span<const std::string> relations, int beam);
std::vector<EventInference> decode_infer_events_response(
    const nlohmann::json &j, std::span<const std::string> relations, int beam);

nlohmann::json encode_infill_request(std::string_view context, std::string_view tmpl);
InfillResult decode_infill_response(const nlohmann::json &j);

nlohmann::json encode_score_request(std::string_view context, std::string_view continuation);
std::vector<double> decode_score_response(const nlohmann::json &j);

nlohmann::json encode_similarity_request(std::span<const std::string> a,
                                         std::span<const std::string> b);
SimilarityMatrix decode_similarity_response(const nlohmann::json &j, std::size_t rows,
                                            std::size_t cols);

nlohmann::json encode_srl_request(std::string_view sentence);
std::vector<SrlRecord> decode_srl_response(const nlohmann::json &j, int index);

// Server-side helpers: responses built from provider answers.
nlohmann::json encode_infer_events_response(const std::vector<EventInference> &results);
nlohmann::json encode_infill_response(const InfillResult &r);
nlohmann::json encode_score_response(const std::vector<double> &logprobs);
nlohmann::json encode_similarity_response(const SimilarityMatrix &m);
nlohmann::json encode_srl_response(const std::vector<SrlRecord> &records);

}  // namespace kgplot::wire

#endif  // KGPLOT_WIRE_H_
