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

#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <string>

#include "coco/net/json_codec.hpp"

namespace coco::net {

struct Endpoint {
  std::string host = "127.0.0.1";
  std::uint16_t port = 0;

  // "host:port" or ":port". Throws ProtocolError.
  static Endpoint parse(std::string_view text);
  std::string to_string() const;
};

// One request, one reply. call() counts messages per op and turns
// {"ok": false} replies into the matching exception, so the client code
// above it never looks at raw error objects.
class Transport {
 public:
  virtual ~Transport() = default;

  Json call(const Json& request);

  std::size_t messages_sent() const;
  std::size_t messages_sent(const std::string& op) const;

 protected:
  virtual Json exchange(const Json& request) = 0;

 private:
  mutable std::mutex mu_;
  std::map<std::string, std::size_t> sent_;
};

// Newline-delimited JSON over one persistent TCP connection.
// Throws ConnectionError when the peer is unreachable or goes away.
class TcpTransport : public Transport {
 public:
  explicit TcpTransport(Endpoint endpoint);
  ~TcpTransport() override;
  TcpTransport(const TcpTransport&) = delete;
  TcpTransport& operator=(const TcpTransport&) = delete;

 protected:
  Json exchange(const Json& request) override;

 private:
  void connect();

  Endpoint endpoint_;
  int fd_ = -1;
  std::string buffer_;
};

// Hands requests straight to a handler in the same process.
class LocalTransport : public Transport {
 public:
  using Handler = std::function<Json(const Json&)>;
  explicit LocalTransport(Handler handler) : handler_(std::move(handler)) {}

 protected:
  Json exchange(const Json& request) override;

 private:
  Handler handler_;
};

}  // namespace coco::net
