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

#include "kgplot/wire.h"

#include <cmath>
#include <map>

#include "kgplot/error.h"

namespace kgplot::wire {
namespace {

using json = nlohmann::json;

[[noreturn]] void schema(const std::string &what) {
  throw TransportError(TransportError::Kind::kSchema, "schema violation: " + what);
}

const json &field(const json &j, const char *name) {
  if (!j.is_object() || !j.contains(name)) schema(std::string("missing field '") + name + "'");
  return j[name];
}

std::string string_field(const json &j, const char *name) {
  const json &v = field(j, name);
  if (!v.is_string()) schema(std::string("field '") + name + "' is not a string");
  return v.get<std::string>();
}

double number(const json &v, const char *what) {
  if (!v.is_number()) schema(std::string(what) + " is not a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) schema(std::string(what) + " is not finite");
  return d;
}

}  // namespace

json encode_infer_events_request(std::string_view text, std::span<const std::string> relations,
                                 int beam) {
  if (beam < 1) throw ValidationError("infer_events beam must be >= 1");
  if (relations.empty()) throw ValidationError("infer_events needs at least one relation");
  return {{"text", text},
          {"relations", std::vector<std::string>(relations.begin(), relations.end())},
          {"beam", beam}};
}

std::vector<EventInference> decode_infer_events_response(const json &j,
                                                         std::span<const std::string> relations,
                                                         int beam) {
  const json &results = field(j, "results");
  if (!results.is_array()) schema("'results' is not an array");
  std::map<std::string, int> per_relation;
  for (const auto &r : relations) per_relation[r] = 0;
  std::vector<EventInference> out;
  for (const auto &r : results) {
    EventInference ev;
    ev.relation = string_field(r, "relation");
    ev.text = string_field(r, "text");
    ev.score = number(field(r, "score"), "'score'");
    auto it = per_relation.find(ev.relation);
    if (it == per_relation.end()) schema("unrequested relation '" + ev.relation + "'");
    if (++it->second > beam) schema("more than beam results for '" + ev.relation + "'");
    out.push_back(std::move(ev));
  }
  return out;
}

json encode_infill_request(std::string_view context, std::string_view tmpl) {
  return {{"context", context}, {"template", tmpl}};
}

InfillResult decode_infill_response(const json &j) {
  InfillResult r;
  r.filled = string_field(j, "filled");
  r.score = number(field(j, "score"), "'score'");
  return r;
}

json encode_score_request(std::string_view context, std::string_view continuation) {
  return {{"context", context}, {"continuation", continuation}};
}

std::vector<double> decode_score_response(const json &j) {
  const json &arr = field(j, "token_logprobs");
  if (!arr.is_array()) schema("'token_logprobs' is not an array");
  std::vector<double> out;
  for (const auto &v : arr) {
    const double lp = number(v, "token log-prob");
    if (lp > 1e-9) schema("token log-prob is positive");
    out.push_back(lp);
  }
  return out;
}

json encode_similarity_request(std::span<const std::string> a, std::span<const std::string> b) {
  return {{"a", std::vector<std::string>(a.begin(), a.end())},
          {"b", std::vector<std::string>(b.begin(), b.end())}};
}

SimilarityMatrix decode_similarity_response(const json &j, std::size_t rows, std::size_t cols) {
  const json &m = field(j, "matrix");
  if (!m.is_array() || m.size() != rows) schema("'matrix' row count mismatch");
  SimilarityMatrix out;
  for (const auto &row : m) {
    if (!row.is_array() || row.size() != cols) schema("'matrix' column count mismatch");
    std::vector<double> r;
    for (const auto &v : row) {
      const double d = number(v, "similarity");
      if (d < -1.0 - 1e-9 || d > 1.0 + 1e-9) schema("similarity outside [-1,1]");
      r.push_back(d);
    }
    out.push_back(std::move(r));
  }
  return out;
}

json encode_srl_request(std::string_view sentence) { return {{"sentence", sentence}}; }

std::vector<SrlRecord> decode_srl_response(const json &j, int index) {
  const json &records = field(j, "records");
  if (!records.is_array()) schema("'records' is not an array");
  std::vector<SrlRecord> out;
  for (const auto &r : records) {
    SrlRecord rec;
    rec.frame = string_field(r, "frame");
    rec.sentence_index = index;
    const json &args = field(r, "args");
    if (!args.is_object()) schema("'args' is not an object");
    for (const auto &[role, text] : args.items()) {
      if (!text.is_string()) schema("argument '" + role + "' is not a string");
      rec.args[role] = text.get<std::string>();
    }
    out.push_back(std::move(rec));
  }
  return out;
}

json encode_infer_events_response(const std::vector<EventInference> &results) {
  json arr = json::array();
  for (const auto &r : results) {
    arr.push_back({{"relation", r.relation}, {"text", r.text}, {"score", r.score}});
  }
  return {{"results", std::move(arr)}};
}

json encode_infill_response(const InfillResult &r) {
  return {{"filled", r.filled}, {"score", r.score}};
}

json encode_score_response(const std::vector<double> &logprobs) {
  return {{"token_logprobs", logprobs}};
}

json encode_similarity_response(const SimilarityMatrix &m) { return {{"matrix", m}}; }

json encode_srl_response(const std::vector<SrlRecord> &records) {
  json arr = json::array();
  for (const auto &r : records) {
    json args = json::object();
    for (const auto &[role, text] : r.args) args[role] = text;
    arr.push_back({{"frame", r.frame}, {"args", std::move(args)}});
  }
  return {{"records", std::move(arr)}};
}

}  // namespace kgplot::wire
