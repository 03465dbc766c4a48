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

#include "wsdecode/session_server.h"

#include <netdb.h>
#include <poll.h>
#include <sys/socket.h>
#include <sys/un.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

#include "httplib.h"
#include "wsdecode/error.h"

namespace wsd {

namespace {

struct Endpoint {
  bool unix_socket = false;
  std::string path;  // unix
  std::string host;  // tcp
  std::string port;
};

Endpoint ParseEndpoint(const std::string& address) {
  Endpoint e;
  if (address.rfind("unix:", 0) == 0) {
    e.unix_socket = true;
    e.path = address.substr(5);
    if (e.path.empty()) throw UsageError("empty unix socket path");
    return e;
  }
  const size_t colon = address.rfind(':');
  if (colon == std::string::npos || colon + 1 == address.size()) {
    throw UsageError("address must be host:port or unix:/path, got '" + address + "'");
  }
  e.host = address.substr(0, colon);
  e.port = address.substr(colon + 1);
  if (e.host.empty()) e.host = "127.0.0.1";
  return e;
}

sockaddr_un UnixAddress(const std::string& path) {
  sockaddr_un addr{};
  addr.sun_family = AF_UNIX;
  if (path.size() >= sizeof(addr.sun_path)) {
    throw UsageError("unix socket path too long: " + path);
  }
  std::memcpy(addr.sun_path, path.c_str(), path.size() + 1);
  return addr;
}

// Opens a listening (passive) or connected socket for the endpoint.
int OpenSocket(const Endpoint& e, bool passive) {
  if (e.unix_socket) {
    const int fd = ::socket(AF_UNIX, SOCK_STREAM | SOCK_CLOEXEC, 0);
    if (fd < 0) throw DataError(std::string("socket: ") + std::strerror(errno));
    const sockaddr_un addr = UnixAddress(e.path);
    if (passive) {
      ::unlink(e.path.c_str());
      if (::bind(fd, reinterpret_cast<const sockaddr*>(&addr), sizeof(addr)) != 0 ||
          ::listen(fd, 64) != 0) {
        const std::string why = std::strerror(errno);
        ::close(fd);
        throw DataError("cannot listen on unix:" + e.path + ": " + why);
      }
    } else if (::connect(fd, reinterpret_cast<const sockaddr*>(&addr), sizeof(addr)) != 0) {
      const std::string why = std::strerror(errno);
      ::close(fd);
      throw DataError("cannot connect to unix:" + e.path + ": " + why);
    }
    return fd;
  }

  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  hints.ai_flags = passive ? AI_PASSIVE : 0;
  addrinfo* found = nullptr;
  if (int rc = ::getaddrinfo(e.host.c_str(), e.port.c_str(), &hints, &found); rc != 0) {
    throw DataError("cannot resolve " + e.host + ":" + e.port + ": " + gai_strerror(rc));
  }
  std::string why = "no usable address";
  for (addrinfo* ai = found; ai != nullptr; ai = ai->ai_next) {
    const int fd = ::socket(ai->ai_family, ai->ai_socktype | SOCK_CLOEXEC, ai->ai_protocol);
    if (fd < 0) continue;
    bool ok;
    if (passive) {
      const int one = 1;
      ::setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
      ok = ::bind(fd, ai->ai_addr, ai->ai_addrlen) == 0 && ::listen(fd, 64) == 0;
    } else {
      ok = ::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0;
    }
    if (ok) {
      ::freeaddrinfo(found);
      return fd;
    }
    why = std::strerror(errno);
    ::close(fd);
  }
  ::freeaddrinfo(found);
  throw DataError("cannot " + std::string(passive ? "listen on " : "connect to ") +
                  e.host + ":" + e.port + ": " + why);
}

bool SendAll(int fd, std::string_view bytes) {
  while (!bytes.empty()) {
    const ssize_t n = ::send(fd, bytes.data(), bytes.size(), MSG_NOSIGNAL);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) return false;
    bytes.remove_prefix(static_cast<size_t>(n));
  }
  return true;
}

}  // namespace

// ---------------------------------------------------------------------------

SessionRegistry::SessionRegistry(std::shared_ptr<const WeightedFst> graph,
                                 ServerOptions options)
    : graph_(std::move(graph)), options_(options) {}

std::string SessionRegistry::NextId() { return "s" + std::to_string(++counter_); }

size_t SessionRegistry::Size() {
  std::lock_guard lock(mu_);
  return sessions_.size();
}

void SessionRegistry::ExpireIdle() {
  const auto now = std::chrono::steady_clock::now();
  std::lock_guard lock(mu_);
  std::erase_if(sessions_, [&](const auto& kv) {
    std::unique_lock entry_lock(kv.second->mu, std::try_to_lock);
    return entry_lock.owns_lock() &&
           now - kv.second->last_active > options_.idle_timeout;
  });
}

std::vector<nlohmann::json> SessionRegistry::Run(const std::shared_ptr<Entry>& entry,
                                                 const nlohmann::json& message) {
  std::vector<nlohmann::json> replies;
  bool finished;
  {
    std::lock_guard lock(entry->mu);
    replies = entry->session.Handle(message);
    entry->last_active = std::chrono::steady_clock::now();
    finished = entry->session.Finished();
  }
  if (finished) {
    std::lock_guard lock(mu_);
    sessions_.erase(entry->session.Id());
  }
  return replies;
}

std::vector<nlohmann::json> SessionRegistry::Open(const nlohmann::json& hello) {
  ExpireIdle();
  auto entry = std::make_shared<Entry>(graph_, NextId());
  entry->last_active = std::chrono::steady_clock::now();
  {
    std::lock_guard lock(mu_);
    sessions_[entry->session.Id()] = entry;
  }
  return Run(entry, hello);
}

std::vector<nlohmann::json> SessionRegistry::Deliver(const std::string& id,
                                                     const nlohmann::json& message) {
  ExpireIdle();
  std::shared_ptr<Entry> entry;
  {
    std::lock_guard lock(mu_);
    auto it = sessions_.find(id);
    if (it != sessions_.end()) entry = it->second;
  }
  if (!entry) return {ErrorMessage(id, err::kUnknownSession, "no live session '" + id + "'")};
  return Run(entry, message);
}

// ---------------------------------------------------------------------------

StreamServer::StreamServer(std::shared_ptr<const WeightedFst> graph,
                           ServerOptions options)
    : graph_(std::move(graph)), options_(options) {}

StreamServer::~StreamServer() { Stop(); }

int StreamServer::Start(const std::string& address) {
  if (listen_fd_ >= 0) throw UsageError("stream server already started");
  const Endpoint e = ParseEndpoint(address);
  listen_fd_ = OpenSocket(e, /*passive=*/true);
  int port = 0;
  if (e.unix_socket) {
    unix_path_ = e.path;
  } else {
    sockaddr_storage addr{};
    socklen_t len = sizeof(addr);
    ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
    port = addr.ss_family == AF_INET6
               ? ntohs(reinterpret_cast<sockaddr_in6*>(&addr)->sin6_port)
               : ntohs(reinterpret_cast<sockaddr_in*>(&addr)->sin_port);
  }
  stopping_ = false;
  acceptor_ = std::thread([this] { AcceptLoop(); });
  return port;
}

void StreamServer::Stop() {
  if (listen_fd_ < 0) return;
  stopping_ = true;
  if (acceptor_.joinable()) acceptor_.join();
  ::close(listen_fd_);
  listen_fd_ = -1;
  std::vector<std::thread> workers;
  {
    std::lock_guard lock(mu_);
    for (int fd : client_fds_) ::shutdown(fd, SHUT_RDWR);
    workers.swap(workers_);
  }
  for (auto& t : workers) t.join();
  if (!unix_path_.empty()) ::unlink(unix_path_.c_str());
}

void StreamServer::AcceptLoop() {
  while (!stopping_) {
    pollfd p{listen_fd_, POLLIN, 0};
    if (::poll(&p, 1, 100) <= 0) continue;
    const int fd = ::accept4(listen_fd_, nullptr, nullptr, SOCK_CLOEXEC);
    if (fd < 0) continue;
    std::lock_guard lock(mu_);
    client_fds_.push_back(fd);
    workers_.emplace_back([this, fd] { Serve(fd); });
  }
}

void StreamServer::Serve(int fd) {
  ProtocolSession session(graph_, "s" + std::to_string(++counter_));
  FrameDecoder decoder;
  const auto send = [&](const std::vector<nlohmann::json>& messages) {
    for (const auto& m : messages) {
      if (!SendAll(fd, EncodeFrame(m))) return false;
    }
    return true;
  };
  const int timeout_ms = static_cast<int>(std::min<int64_t>(
      options_.idle_timeout.count(), std::numeric_limits<int>::max()));
  char buf[65536];
  bool open = true;
  while (open && !stopping_) {
    pollfd p{fd, POLLIN, 0};
    const int ready = ::poll(&p, 1, timeout_ms);
    if (ready == 0) break;  // idle timeout
    if (ready < 0) {
      if (errno == EINTR) continue;
      break;
    }
    const ssize_t n = ::recv(fd, buf, sizeof(buf), 0);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) break;
    decoder.Feed(std::string_view(buf, static_cast<size_t>(n)));
    try {
      while (open) {
        auto text = decoder.Next();
        if (!text) break;
        nlohmann::json message = nlohmann::json::parse(*text, nullptr, false);
        if (message.is_discarded()) {
          send({ErrorMessage(session.Id(), err::kMalformed, "message is not valid JSON")});
          open = false;
          break;
        }
        open = send(session.Handle(message)) && !session.Finished();
      }
    } catch (const DataError& e) {
      send({ErrorMessage(session.Id(), err::kMalformed, e.what())});
      open = false;
    }
  }
  {
    std::lock_guard lock(mu_);
    std::erase(client_fds_, fd);
  }
  ::shutdown(fd, SHUT_RDWR);
  ::close(fd);
}

// ---------------------------------------------------------------------------

HttpServer::HttpServer(std::shared_ptr<const WeightedFst> graph, ServerOptions options)
    : registry_(std::move(graph), options), server_(std::make_unique<httplib::Server>()) {
  const auto reply = [](httplib::Response& res, int status,
                        const std::vector<nlohmann::json>& messages) {
    nlohmann::json body;
    body["messages"] = messages;
    res.status = status;
    res.set_content(body.dump(), "application/json");
  };
  const auto parse = [](const httplib::Request& req) {
    return nlohmann::json::parse(req.body, nullptr, false);
  };
  server_->set_default_headers({{"Access-Control-Allow-Origin", "*"},
                                {"Access-Control-Allow-Headers", "Content-Type"}});
  server_->Options(R"(/v1/.*)", [](const httplib::Request&, httplib::Response& res) {
    res.status = 204;
  });
  server_->Get("/v1/health", [this](const httplib::Request&, httplib::Response& res) {
    nlohmann::json body{{"status", "ok"}, {"sessions", registry_.Size()}};
    res.set_content(body.dump(), "application/json");
  });
  server_->Post("/v1/sessions", [=, this](const httplib::Request& req,
                                          httplib::Response& res) {
    const nlohmann::json message = parse(req);
    if (message.is_discarded()) {
      reply(res, 400, {ErrorMessage("", err::kMalformed, "body is not valid JSON")});
      return;
    }
    reply(res, 200, registry_.Open(message));
  });
  server_->Post(R"(/v1/sessions/([A-Za-z0-9_-]+))",
                [=, this](const httplib::Request& req, httplib::Response& res) {
                  const std::string id = req.matches[1];
                  const nlohmann::json message = parse(req);
                  if (message.is_discarded()) {
                    reply(res, 400, {ErrorMessage(id, err::kMalformed,
                                                  "body is not valid JSON")});
                    return;
                  }
                  auto replies = registry_.Deliver(id, message);
                  const bool unknown = replies.size() == 1 &&
                                       replies[0]["kind"] == msg::kError &&
                                       replies[0]["code"] == err::kUnknownSession;
                  reply(res, unknown ? 404 : 200, replies);
                });
}

HttpServer::~HttpServer() { Stop(); }

int HttpServer::Start(const std::string& host, int port) {
  int bound = port;
  if (port == 0) {
    bound = server_->bind_to_any_port(host);
  } else if (!server_->bind_to_port(host, port)) {
    bound = -1;
  }
  if (bound < 0) {
    throw DataError("cannot listen on " + host + ":" + std::to_string(port));
  }
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
  return bound;
}

void HttpServer::Stop() {
  if (!thread_.joinable()) return;
  server_->stop();
  thread_.join();
}

// ---------------------------------------------------------------------------

StreamClient::StreamClient(const std::string& address)
    : fd_(OpenSocket(ParseEndpoint(address), /*passive=*/false)) {}

StreamClient::~StreamClient() {
  if (fd_ >= 0) ::close(fd_);
}

void StreamClient::Send(const nlohmann::json& message) { SendRaw(EncodeFrame(message)); }

void StreamClient::SendRaw(std::string_view bytes) {
  if (!SendAll(fd_, bytes)) throw DataError("send failed: connection closed");
}

std::optional<nlohmann::json> StreamClient::Receive() {
  char buf[65536];
  while (true) {
    if (auto text = decoder_.Next()) return nlohmann::json::parse(*text);
    const ssize_t n = ::recv(fd_, buf, sizeof(buf), 0);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) return std::nullopt;
    decoder_.Feed(std::string_view(buf, static_cast<size_t>(n)));
  }
}

}  // namespace wsd
