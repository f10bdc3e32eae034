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

#include "kgplot/http.h"

#include <httplib.h>

#include <chrono>
#include <thread>

#include "kgplot/error.h"
#include "kgplot/wire.h"

namespace kgplot {
namespace {

using json = nlohmann::json;

bool transient(const TransportError &e) {
  switch (e.kind()) {
    case TransportError::Kind::kTimeout:
    case TransportError::Kind::kConnection:
      return true;
    case TransportError::Kind::kStatus:
      return e.status() >= 500 || e.status() == 429;
    case TransportError::Kind::kSchema:
      return false;
  }
  return false;
}

class SemaphoreGuard {
 public:
  explicit SemaphoreGuard(std::counting_semaphore<256> &s) : s_(s) { s_.acquire(); }
  ~SemaphoreGuard() { s_.release(); }
  SemaphoreGuard(const SemaphoreGuard &) = delete;
  SemaphoreGuard &operator=(const SemaphoreGuard &) = delete;

 private:
  std::counting_semaphore<256> &s_;
};

}  // namespace

void ProviderEndpointConfig::validate() const {
  if (base_url.empty()) throw ValidationError("endpoint base URL is empty");
  if (timeout_ms <= 0) throw ValidationError("endpoint timeout must be > 0");
  if (retries < 0) throw ValidationError("endpoint retries must be >= 0");
  if (max_in_flight < 1 || max_in_flight > 256) {
    throw ValidationError("max in-flight requests must be in [1, 256]");
  }
}

HttpBackend::HttpBackend(ProviderEndpointConfig config)
    : config_(std::move(config)), next_id_(config_.request_id_seed) {
  config_.validate();
  in_flight_ = std::make_unique<std::counting_semaphore<256>>(config_.max_in_flight);
}

ProviderSet HttpBackend::providers() const { return ProviderSet{this, this, this, this, this}; }

json HttpBackend::post_once(const std::string &path, const std::string &payload,
                            const std::string &request_id) const {
  httplib::Client client(config_.base_url);
  const auto sec = config_.timeout_ms / 1000;
  const auto usec = (config_.timeout_ms % 1000) * 1000;
  client.set_connection_timeout(sec, usec);
  client.set_read_timeout(sec, usec);
  client.set_write_timeout(sec, usec);

  httplib::Result res = [&] {
    SemaphoreGuard guard(*in_flight_);
    return client.Post(path, payload, "application/json");
  }();
  if (!res) {
    const httplib::Error err = res.error();
    const auto kind = (err == httplib::Error::Read || err == httplib::Error::ConnectionTimeout)
                          ? TransportError::Kind::kTimeout
                          : TransportError::Kind::kConnection;
    throw TransportError(kind, path + ": " + httplib::to_string(err));
  }
  if (res->status < 200 || res->status >= 300) {
    throw TransportError(TransportError::Kind::kStatus,
                         path + ": HTTP " + std::to_string(res->status), res->status);
  }
  json j;
  try {
    j = json::parse(res->body);
  } catch (const json::parse_error &e) {
    throw TransportError(TransportError::Kind::kSchema,
                         path + ": response is not JSON: " + e.what());
  }
  if (!j.is_object()) {
    throw TransportError(TransportError::Kind::kSchema, path + ": response is not an object");
  }
  if (j.contains("request_id") && j["request_id"] != request_id) {
    throw TransportError(TransportError::Kind::kSchema, path + ": request_id mismatch");
  }
  return j;
}

json HttpBackend::call(const std::string &path, json body) const {
  const std::string request_id = "req-" + std::to_string(next_id_.fetch_add(1));
  body["request_id"] = request_id;
  const std::string payload = body.dump();
  for (int attempt = 0;; ++attempt) {
    try {
      return post_once(path, payload, request_id);
    } catch (const TransportError &e) {
      if (!transient(e) || attempt >= config_.retries) throw;
      std::this_thread::sleep_for(std::chrono::milliseconds(10 * (attempt + 1)));
    }
  }
}

std::vector<SrlRecord> HttpBackend::parse(std::string_view sentence, int index) const {
  return wire::decode_srl_response(call(wire::kSrlPath, wire::encode_srl_request(sentence)),
                                   index);
}

std::vector<EventInference> HttpBackend::infer(std::string_view text,
                                               std::span<const std::string> relations,
                                               int beam) const {
  json req = wire::encode_infer_events_request(text, relations, beam);
  return wire::decode_infer_events_response(call(wire::kInferEventsPath, std::move(req)),
                                            relations, beam);
}

InfillResult HttpBackend::infill(std::string_view context,
                                 std::string_view masked_template) const {
  return wire::decode_infill_response(
      call(wire::kInfillPath, wire::encode_infill_request(context, masked_template)));
}

std::vector<double> HttpBackend::token_logprobs(std::string_view context,
                                                std::string_view continuation) const {
  return wire::decode_score_response(
      call(wire::kScorePath, wire::encode_score_request(context, continuation)));
}

SimilarityMatrix HttpBackend::similarity(std::span<const std::string> a,
                                         std::span<const std::string> b) const {
  if (a.empty() || b.empty()) return SimilarityMatrix(a.size());
  return wire::decode_similarity_response(
      call(wire::kSimilarityPath, wire::encode_similarity_request(a, b)), a.size(), b.size());
}

}  // namespace kgplot
