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

#ifndef KGPLOT_SERVER_H_
#define KGPLOT_SERVER_H_

#include <memory>
#include <string>
#include <thread>

#include "kgplot/providers.h"

namespace httplib {
class Server;
}

namespace kgplot {

// Serves the model-service wire protocol from any ProviderSet. Paired with
// a FixtureBackend it replays fixture tables over HTTP.
class ProtocolServer {
 public:
  explicit ProtocolServer(ProviderSet providers);
  ~ProtocolServer();

  ProtocolServer(const ProtocolServer &) = delete;
  ProtocolServer &operator=(const ProtocolServer &) = delete;

  // Binds (port 0 picks a free port) and serves on a background thread.
  // Returns the bound port.
  int start(const std::string &host = "127.0.0.1", int port = 0);
  // Serves on the calling thread until stop() is called elsewhere.
  void listen(const std::string &host, int port);
  void stop();

  std::string base_url() const;

 private:
  void install_routes();

  ProviderSet providers_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
  std::string host_;
  int port_ = 0;
};

}  // namespace kgplot

#endif  // KGPLOT_SERVER_H_
