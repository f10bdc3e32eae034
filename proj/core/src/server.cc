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

#include "kgplot/server.h"

#include <httplib.h>

#include <functional>
#include <nlohmann/json.hpp>

#include "kgplot/error.h"
#include "kgplot/wire.h"

namespace kgplot {
namespace {

using json = nlohmann::json;
using Handler = std::function<json(const json &)>;

void reply(httplib::Response &res, int status, const json &body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

httplib::Server::Handler wrap(Handler h) {
  return [h = std::move(h)](const httplib::Request &req, httplib::Response &res) {
    json body;
    try {
      body = json::parse(req.body);
    } catch (const json::parse_error &e) {
      reply(res, 400, {{"error", std::string("malformed JSON: ") + e.what()}});
      return;
    }
    try {
      json out = h(body);
      if (body.contains("request_id")) out["request_id"] = body["request_id"];
      reply(res, 200, out);
    } catch (const json::exception &e) {
      reply(res, 400, {{"error", std::string("bad request: ") + e.what()}});
    } catch (const ValidationError &e) {
      reply(res, 400, {{"error", e.what()}});
    } catch (const std::exception &e) {
      reply(res, 500, {{"error", e.what()}});
    }
  };
}

}  // namespace

ProtocolServer::ProtocolServer(ProviderSet providers)
    : providers_(providers), server_(std::make_unique<httplib::Server>()) {
  providers_.require_all();
  install_routes();
}

ProtocolServer::~ProtocolServer() { stop(); }

void ProtocolServer::install_routes() {
  const ProviderSet p = providers_;
  server_->Post(wire::kInferEventsPath, wrap([p](const json &b) {
    const auto relations = b.at("relations").get<std::vector<std::string>>();
    const int beam = b.at("beam").get<int>();
    if (beam < 1) throw ValidationError("beam must be >= 1");
    return wire::encode_infer_events_response(
        p.events->infer(b.at("text").get<std::string>(), relations, beam));
  }));
  server_->Post(wire::kInfillPath, wrap([p](const json &b) {
    return wire::encode_infill_response(p.infill->infill(
        b.at("context").get<std::string>(), b.at("template").get<std::string>()));
  }));
  server_->Post(wire::kScorePath, wrap([p](const json &b) {
    return wire::encode_score_response(p.scorer->token_logprobs(
        b.at("context").get<std::string>(), b.at("continuation").get<std::string>()));
  }));
  server_->Post(wire::kSimilarityPath, wrap([p](const json &b) {
    const auto a = b.at("a").get<std::vector<std::string>>();
    const auto bb = b.at("b").get<std::vector<std::string>>();
    return wire::encode_similarity_response(p.similarity->similarity(a, bb));
  }));
  server_->Post(wire::kSrlPath, wrap([p](const json &b) {
    return wire::encode_srl_response(p.srl->parse(b.at("sentence").get<std::string>(), 0));
  }));
  server_->Get(wire::kHealthPath, [](const httplib::Request &, httplib::Response &res) {
    reply(res, 200,
          {{"ready", true},
           {"roles", {{"infer_events", true}, {"infill", true}, {"score", true},
                      {"similarity", true}, {"srl", true}}}});
  });
}

int ProtocolServer::start(const std::string &host, int port) {
  host_ = host;
  port_ = port == 0 ? server_->bind_to_any_port(host) : (server_->bind_to_port(host, port) ? port : -1);
  if (port_ < 0) throw Error("cannot bind " + host + ":" + std::to_string(port));
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
  return port_;
}

void ProtocolServer::listen(const std::string &host, int port) {
  host_ = host;
  port_ = port;
  if (!server_->listen(host, port)) {
    throw Error("cannot listen on " + host + ":" + std::to_string(port));
  }
}

void ProtocolServer::stop() {
  if (server_) server_->stop();
  if (thread_.joinable()) thread_.join();
}

std::string ProtocolServer::base_url() const {
  return "http://" + host_ + ":" + std::to_string(port_);
}

}  // namespace kgplot
