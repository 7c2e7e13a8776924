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


#include "coco/net/line_server.hpp"

#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cctype>
#include <cerrno>
#include <charconv>
#include <chrono>
#include <cstring>
#include <sstream>

#include "coco/error.hpp"

namespace coco::net {

namespace {

constexpr std::size_t kMaxLine = 64u << 20;

bool send_all(int fd, std::string_view bytes) {
  std::size_t written = 0;
  while (written < bytes.size()) {
    const ssize_t n = ::send(fd, bytes.data() + written, bytes.size() - written,
                             MSG_NOSIGNAL);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) return false;
    written += static_cast<std::size_t>(n);
  }
  return true;
}

// Appends whatever arrives next; false on EOF or error.
bool read_more(int fd, std::string& buffer) {
  char chunk[8192];
  while (true) {
    const ssize_t n = ::recv(fd, chunk, sizeof(chunk), 0);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) return false;
    buffer.append(chunk, static_cast<std::size_t>(n));
    return true;
  }
}

const char* reason_phrase(int status) {
  switch (status) {
    case 200: return "OK";
    case 400: return "Bad Request";
    case 404: return "Not Found";
    case 405: return "Method Not Allowed";
    case 409: return "Conflict";
    case 415: return "Unsupported Media Type";
    default: return "Internal Server Error";
  }
}

}  // namespace

LineServer::LineServer(std::uint16_t port, JsonHandler json_handler,
                       HttpHandler http_handler)
    : json_handler_(std::move(json_handler)),
      http_handler_(std::move(http_handler)) {
  listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (listen_fd_ < 0) throw IoError(std::string("socket: ") + std::strerror(errno));
  const int one = 1;
  ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_ANY);
  addr.sin_port = htons(port);
  if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0 ||
      ::listen(listen_fd_, 128) != 0) {
    const std::string why = std::strerror(errno);
    ::close(listen_fd_);
    throw IoError("cannot listen on port " + std::to_string(port) + ": " + why);
  }
  socklen_t len = sizeof(addr);
  ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
  port_ = ntohs(addr.sin_port);
  acceptor_ = std::thread([this] { accept_loop(); });
}

LineServer::~LineServer() { stop(); }

void LineServer::stop() {
  if (stopping_.exchange(true)) {
    if (acceptor_.joinable()) acceptor_.join();
    return;
  }
  ::shutdown(listen_fd_, SHUT_RDWR);
  if (acceptor_.joinable()) acceptor_.join();
  ::close(listen_fd_);

  std::list<std::unique_ptr<Connection>> open;
  {
    std::lock_guard<std::mutex> lock(mu_);
    open.swap(connections_);
    for (auto& conn : open) ::shutdown(conn->fd, SHUT_RDWR);
  }
  for (auto& conn : open) {
    if (conn->thread.joinable()) conn->thread.join();
    ::close(conn->fd);
  }
}

void LineServer::wait() {
  while (!stopping_) std::this_thread::sleep_for(std::chrono::milliseconds(200));
}

void LineServer::reap_finished() {
  std::lock_guard<std::mutex> lock(mu_);
  for (auto it = connections_.begin(); it != connections_.end();) {
    if ((*it)->done) {
      (*it)->thread.join();
      ::close((*it)->fd);
      it = connections_.erase(it);
    } else {
      ++it;
    }
  }
}

void LineServer::accept_loop() {
  while (!stopping_) {
    const int fd = ::accept(listen_fd_, nullptr, nullptr);
    if (fd < 0) {
      if (errno == EINTR || errno == ECONNABORTED) continue;
      break;  // listener shut down
    }
    if (stopping_) {
      ::close(fd);
      break;
    }
    const int one = 1;
    ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
    reap_finished();
    std::lock_guard<std::mutex> lock(mu_);
    auto conn = std::make_unique<Connection>();
    conn->fd = fd;
    Connection* raw = conn.get();
    connections_.push_back(std::move(conn));
    raw->thread = std::thread([this, raw] {
      try {
        serve(*raw);
      } catch (const std::exception&) {
        // A broken connection only ends that connection.
      }
      raw->done = true;
    });
  }
}

void LineServer::serve(Connection& conn) {
  std::string buffer;
  // Enough bytes to tell HTTP from a JSON line.
  while (buffer.size() < 4 && buffer.find('\n') == std::string::npos) {
    if (!read_more(conn.fd, buffer)) return;
  }
  if (http_handler_ &&
      (buffer.rfind("GET ", 0) == 0 || buffer.rfind("PUT ", 0) == 0)) {
    serve_http(conn.fd, std::move(buffer));
  } else {
    serve_json(conn.fd, std::move(buffer));
  }
  ::shutdown(conn.fd, SHUT_RDWR);
}

void LineServer::serve_json(int fd, std::string buffer) {
  while (!stopping_) {
    std::size_t newline;
    while ((newline = buffer.find('\n')) == std::string::npos) {
      if (buffer.size() > kMaxLine) {
        send_all(fd, error_reply("ProtocolError", "request line too long").dump() + "\n");
        return;
      }
      if (!read_more(fd, buffer)) return;
    }
    std::string line = buffer.substr(0, newline);
    buffer.erase(0, newline + 1);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    Json reply;
    try {
      reply = json_handler_(Json::parse(line));
    } catch (const Json::parse_error& e) {
      reply = error_reply("ProtocolError", std::string("bad JSON: ") + e.what());
    } catch (const Error& e) {
      reply = error_reply(e.name(), e.what());
    } catch (const std::exception& e) {
      reply = error_reply("InternalError", e.what());
    }
    if (!send_all(fd, reply.dump() + "\n")) return;
  }
}

void LineServer::serve_http(int fd, std::string buffer) {
  std::size_t header_end;
  while ((header_end = buffer.find("\r\n\r\n")) == std::string::npos) {
    if (buffer.size() > kMaxLine || !read_more(fd, buffer)) return;
  }
  HttpRequest request;
  std::size_t content_length = 0;
  {
    std::istringstream head(buffer.substr(0, header_end));
    std::string line;
    std::getline(head, line);
    std::istringstream first(line);
    first >> request.method >> request.path;
    while (std::getline(head, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      const auto colon = line.find(':');
      if (colon == std::string::npos) continue;
      std::string name = line.substr(0, colon);
      for (char& c : name) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      if (name == "content-length") {
        std::string_view value = std::string_view(line).substr(colon + 1);
        while (!value.empty() && value.front() == ' ') value.remove_prefix(1);
        auto [ptr, ec] = std::from_chars(value.data(),
                                         value.data() + value.size(),
                                         content_length);
        if (ec != std::errc()) {
          send_all(fd, "HTTP/1.1 400 Bad Request\r\nContent-Length: 0\r\n"
                       "Connection: close\r\n\r\n");
          return;
        }
      }
    }
  }
  buffer.erase(0, header_end + 4);
  while (buffer.size() < content_length) {
    if (content_length > kMaxLine || !read_more(fd, buffer)) return;
  }
  request.body = buffer.substr(0, content_length);

  HttpResponse response;
  try {
    response = http_handler_(request);
  } catch (const std::exception& e) {
    response = HttpResponse{500, e.what()};
  }
  std::string out = "HTTP/1.1 " + std::to_string(response.status) + " " +
                    reason_phrase(response.status) + "\r\n";
  out += "Content-Type: " + response.content_type + "\r\n";
  out += "Content-Length: " + std::to_string(response.body.size()) + "\r\n";
  out += "Connection: close\r\n\r\n";
  out += response.body;
  send_all(fd, out);
}

}  // namespace coco::net
