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


#include "coco/net/transport.hpp"

#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <charconv>
#include <cstring>

#include "coco/error.hpp"

namespace coco::net {

Endpoint Endpoint::parse(std::string_view text) {
  const auto colon = text.rfind(':');
  if (colon == std::string_view::npos) {
    throw ProtocolError("expected host:port, got '" + std::string(text) + "'");
  }
  Endpoint out;
  if (colon > 0) out.host = std::string(text.substr(0, colon));
  const std::string_view digits = text.substr(colon + 1);
  unsigned value = 0;
  auto [ptr, ec] =
      std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (digits.empty() || ec != std::errc() ||
      ptr != digits.data() + digits.size() || value == 0 || value > 65535) {
    throw ProtocolError("bad port in '" + std::string(text) + "'");
  }
  out.port = static_cast<std::uint16_t>(value);
  return out;
}

std::string Endpoint::to_string() const {
  return host + ":" + std::to_string(port);
}

Json Transport::call(const Json& request) {
  {
    std::lock_guard<std::mutex> lock(mu_);
    ++sent_[request.value("op", std::string())];
  }
  Json reply = exchange(request);
  raise_if_error(reply);
  return reply;
}

std::size_t Transport::messages_sent() const {
  std::lock_guard<std::mutex> lock(mu_);
  std::size_t total = 0;
  for (const auto& [op, n] : sent_) total += n;
  return total;
}

std::size_t Transport::messages_sent(const std::string& op) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = sent_.find(op);
  return it == sent_.end() ? 0 : it->second;
}

TcpTransport::TcpTransport(Endpoint endpoint)
    : endpoint_(std::move(endpoint)) {
  connect();
}

TcpTransport::~TcpTransport() {
  if (fd_ >= 0) ::close(fd_);
}

void TcpTransport::connect() {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* results = nullptr;
  const std::string port = std::to_string(endpoint_.port);
  if (int rc = ::getaddrinfo(endpoint_.host.c_str(), port.c_str(), &hints,
                             &results);
      rc != 0) {
    throw ConnectionError("cannot resolve " + endpoint_.to_string() + ": " +
                          ::gai_strerror(rc));
  }
  int last_errno = 0;
  for (addrinfo* ai = results; ai != nullptr; ai = ai->ai_next) {
    const int fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
    if (fd < 0) {
      last_errno = errno;
      continue;
    }
    if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0) {
      const int one = 1;
      ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
      fd_ = fd;
      break;
    }
    last_errno = errno;
    ::close(fd);
  }
  ::freeaddrinfo(results);
  if (fd_ < 0) {
    throw ConnectionError("cannot connect to " + endpoint_.to_string() + ": " +
                          std::strerror(last_errno));
  }
}

Json TcpTransport::exchange(const Json& request) {
  const std::string line = request.dump() + "\n";
  std::size_t written = 0;
  while (written < line.size()) {
    const ssize_t n = ::send(fd_, line.data() + written, line.size() - written,
                             MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw ConnectionError("send to " + endpoint_.to_string() + " failed: " +
                            std::strerror(errno));
    }
    written += static_cast<std::size_t>(n);
  }

  std::size_t newline;
  while ((newline = buffer_.find('\n')) == std::string::npos) {
    char chunk[4096];
    const ssize_t n = ::recv(fd_, chunk, sizeof(chunk), 0);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) {
      throw ConnectionError("connection to " + endpoint_.to_string() +
                            " closed");
    }
    buffer_.append(chunk, static_cast<std::size_t>(n));
  }
  const std::string reply = buffer_.substr(0, newline);
  buffer_.erase(0, newline + 1);
  try {
    return Json::parse(reply);
  } catch (const Json::parse_error& e) {
    throw ProtocolError(std::string("unparseable reply: ") + e.what());
  }
}

Json LocalTransport::exchange(const Json& request) {
  // Round-trip through text so local tests see exactly what TCP would carry.
  return Json::parse(handler_(Json::parse(request.dump())).dump());
}

}  // namespace coco::net
