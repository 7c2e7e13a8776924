//
// Copyright 2026 The COCO Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//


#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <list>
#include <memory>
#include <mutex>
#include <string>
#include <thread>

#include "coco/net/json_codec.hpp"

namespace coco::net {

struct HttpRequest {
  std::string method;
  std::string path;
  std::string body;
};

struct HttpResponse {
  int status = 200;
  std::string body;
  std::string content_type = "text/plain; charset=utf-8";
};

// TCP server speaking newline-delimited JSON, one reply per request line.
// A connection whose first bytes are "GET " or "PUT " is instead read as a
// single HTTP/1.1 request and closed after the response.
//
// Each connection gets its own thread; handlers must be thread safe.
class LineServer {
 public:
  using JsonHandler = std::function<Json(const Json&)>;
  using HttpHandler = std::function<HttpResponse(const HttpRequest&)>;

  // Port 0 binds an ephemeral port; see port(). Throws IoError.
  LineServer(std::uint16_t port, JsonHandler json_handler,
             HttpHandler http_handler = nullptr);
  ~LineServer();
  LineServer(const LineServer&) = delete;
  LineServer& operator=(const LineServer&) = delete;

  std::uint16_t port() const { return port_; }

  // Stops accepting, drops open connections and joins every thread.
  void stop();

  // Blocks until stop() is called from elsewhere.
  void wait();

 private:
  struct Connection {
    int fd = -1;
    std::thread thread;
    std::atomic<bool> done{false};
  };

  void accept_loop();
  void serve(Connection& conn);
  void serve_json(int fd, std::string buffer);
  void serve_http(int fd, std::string buffer);
  void reap_finished();

  JsonHandler json_handler_;
  HttpHandler http_handler_;
  int listen_fd_ = -1;
  std::uint16_t port_ = 0;
  std::atomic<bool> stopping_{false};
  std::thread acceptor_;
  std::mutex mu_;
  std::list<std::unique_ptr<Connection>> connections_;
};

}  // namespace coco::net
