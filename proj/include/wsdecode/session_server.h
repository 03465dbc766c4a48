// Copyright 2026 The wsdecode Authors.
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

#ifndef WSDECODE_SESSION_SERVER_H_
#define WSDECODE_SESSION_SERVER_H_

#include <atomic>
#include <chrono>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"
#include "wsdecode/protocol.h"

namespace httplib {
class Server;
}

namespace wsd {

struct ServerOptions {
  std::chrono::milliseconds idle_timeout{std::chrono::minutes(10)};
};

// Live sessions keyed by id ("s1", "s2", ...). Each session has its own lock,
// so different sessions progress in parallel while the messages of one
// session are handled one at a time.
class SessionRegistry {
 public:
  SessionRegistry(std::shared_ptr<const WeightedFst> graph, ServerOptions options);

  // Opens a session and answers its hello.
  std::vector<nlohmann::json> Open(const nlohmann::json& hello);
  // Routes a message to an existing session; unknown_session when absent.
  std::vector<nlohmann::json> Deliver(const std::string& id,
                                      const nlohmann::json& message);
  size_t Size();
  void ExpireIdle();

 private:
  struct Entry {
    std::mutex mu;
    ProtocolSession session;
    std::chrono::steady_clock::time_point last_active;
    Entry(std::shared_ptr<const WeightedFst> g, std::string id)
        : session(std::move(g), std::move(id)) {}
  };
  std::vector<nlohmann::json> Run(const std::shared_ptr<Entry>& entry,
                                  const nlohmann::json& message);
  std::string NextId();

  std::shared_ptr<const WeightedFst> graph_;
  ServerOptions options_;
  std::mutex mu_;
  std::map<std::string, std::shared_ptr<Entry>> sessions_;
  std::atomic<uint64_t> counter_{0};
};

// Length-framed messages over TCP ("host:port") or a Unix socket
// ("unix:/path"). One connection carries one session.
class StreamServer {
 public:
  StreamServer(std::shared_ptr<const WeightedFst> graph, ServerOptions options = {});
  ~StreamServer();
  StreamServer(const StreamServer&) = delete;
  StreamServer& operator=(const StreamServer&) = delete;

  // Binds and starts accepting in the background. Returns the bound port
  // for TCP (useful with port 0) and 0 for Unix sockets.
  int Start(const std::string& address);
  void Stop();

 private:
  void AcceptLoop();
  void Serve(int fd);

  std::shared_ptr<const WeightedFst> graph_;
  ServerOptions options_;
  int listen_fd_ = -1;
  std::string unix_path_;
  std::atomic<bool> stopping_{false};
  std::atomic<uint64_t> counter_{0};
  std::thread acceptor_;
  std::mutex mu_;
  std::vector<std::thread> workers_;
  std::vector<int> client_fds_;
};

// HTTP mapping of the protocol:
//   POST /v1/sessions          body: hello        -> {"messages": [...]}
//   POST /v1/sessions/{id}     body: select|stop  -> {"messages": [...]}
//   GET  /v1/health                               -> {"status": "ok", ...}
class HttpServer {
 public:
  HttpServer(std::shared_ptr<const WeightedFst> graph, ServerOptions options = {});
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  int Start(const std::string& host, int port);
  void Stop();

 private:
  SessionRegistry registry_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
};

class StreamClient {
 public:
  explicit StreamClient(const std::string& address);
  ~StreamClient();
  StreamClient(const StreamClient&) = delete;
  StreamClient& operator=(const StreamClient&) = delete;

  void Send(const nlohmann::json& message);
  void SendRaw(std::string_view bytes);
  // Blocks for the next message; nullopt once the server closed the stream.
  std::optional<nlohmann::json> Receive();

 private:
  int fd_ = -1;
  FrameDecoder decoder_;
};

}  // namespace wsd

#endif  // WSDECODE_SESSION_SERVER_H_
