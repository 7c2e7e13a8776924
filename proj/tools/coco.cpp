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


// coco: the sync server, the client commands and a read-only peer endpoint.

#include <pthread.h>
#include <signal.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "coco/client/client.hpp"
#include "coco/client/peer.hpp"
#include "coco/error.hpp"
#include "coco/net/line_server.hpp"
#include "coco/server/dispatcher.hpp"
#include "coco/server/sync_service.hpp"
#include "coco/store/persist.hpp"

namespace {

namespace fs = std::filesystem;
using namespace coco;

constexpr int kOk = 0;
constexpr int kConflict = 1;
constexpr int kFailure = 2;

// Blocks SIGINT/SIGTERM in every thread and waits for one of them.
void wait_for_shutdown_signal() {
  sigset_t set;
  sigemptyset(&set);
  sigaddset(&set, SIGINT);
  sigaddset(&set, SIGTERM);
  int sig = 0;
  sigwait(&set, &sig);
}

void block_shutdown_signals() {
  sigset_t set;
  sigemptyset(&set);
  sigaddset(&set, SIGINT);
  sigaddset(&set, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &set, nullptr);
}

struct ServeArgs {
  std::uint16_t port = 7000;
  std::string data;
  std::int64_t lease_ms = 60000;
};

int serve(const ServeArgs& args) {
  block_shutdown_signals();
  server::ServerOptions options;
  options.lease = std::chrono::milliseconds(args.lease_ms);
  if (!args.data.empty()) options.data_dir = args.data;
  server::SyncService service(options);
  server::Dispatcher dispatcher(service);
  net::LineServer listener(
      args.port, [&](const net::Json& r) { return dispatcher.handle(r); },
      [&](const net::HttpRequest& r) { return dispatcher.handle_http(r); });
  std::cout << "coco server listening on port " << listener.port() << std::endl;
  wait_for_shutdown_signal();
  listener.stop();
  service.shutdown();
  return kOk;
}

struct ClientArgs {
  std::string command;
  std::string file;
  std::string workspace = ".";
  std::string server;
  std::string user;
  std::string device;
  std::string mode;
  std::string peer;
  std::string edit;
  std::string strategy = "union";
  std::uint16_t port = 0;
};

client::ClientConfig resolve_config(const ClientArgs& args) {
  client::ClientConfig cfg =
      client::ClientConfig::load(fs::path(args.workspace) / "coco.conf");
  if (!args.server.empty()) cfg.server = net::Endpoint::parse(args.server);
  if (!args.user.empty()) cfg.user = args.user;
  if (!args.device.empty()) cfg.device = args.device;
  if (!args.mode.empty()) cfg.mode = client::mode_from_string(args.mode);
  if (!args.peer.empty()) cfg.peers.insert(cfg.peers.begin(), net::Endpoint::parse(args.peer));
  return cfg;
}

std::string short_id(const std::optional<store::RevisionId>& id) {
  return id ? id->short_hex() : std::string("(empty)");
}

void print_regions(const std::vector<merge::ConflictRegion>& regions) {
  for (const auto& r : regions) {
    std::cout << "conflict at base line " << r.base_start + 1;
    if (r.base_len > 1) std::cout << "-" << r.base_start + r.base_len;
    std::cout << ":\n";
    for (const auto& line : r.ours) std::cout << "  ours   | " << line << "\n";
    for (const auto& line : r.theirs) std::cout << "  theirs | " << line << "\n";
  }
}

int report(const client::CheckInOutcome& out) {
  std::cout << to_string(out.kind) << ": head " << short_id(out.head);
  if (out.revision) std::cout << ", revision " << out.revision->short_hex();
  if (out.merge) std::cout << ", merge " << out.merge->short_hex();
  std::cout << "\n";
  if (out.kind == client::CheckInOutcome::Kind::kConflictRecorded) {
    print_regions(out.regions);
    return kConflict;
  }
  return kOk;
}

merge::Resolution resolution_from_string(const std::string& text) {
  if (text == "ours") return merge::Resolution::kOurs;
  if (text == "theirs") return merge::Resolution::kTheirs;
  if (text == "union") return merge::Resolution::kUnion;
  throw ConfigError("unknown strategy '" + text + "'");
}

int run_client_command(const ClientArgs& args, client::Client& c,
                       client::Workspace& ws, const client::ClientConfig& cfg) {
  const std::string& cmd = args.command;
  if (cmd == "checkout") {
    const auto ticket = c.checkout();
    std::cout << "checked out " << ws.file() << " at " << short_id(ws.base);
    if (ticket) std::cout << " (lock ticket " << *ticket << ")";
    std::cout << "\n";
    return kOk;
  }
  if (cmd == "checkin") return report(c.checkin());
  if (cmd == "resolve") return report(c.resolve(resolution_from_string(args.strategy)));
  if (cmd == "sync") {
    const std::size_t n = c.sync();
    std::cout << n << " new revision(s); head " << short_id(ws.replica.head()) << "\n";
    return kOk;
  }
  if (cmd == "lock") {
    std::cout << "locked " << ws.file() << " (ticket " << c.lock() << ")\n";
    return kOk;
  }
  if (cmd == "release") {
    c.release();
    std::cout << "released " << ws.file() << "\n";
    return kOk;
  }
  if (cmd == "pull-peer") {
    if (cfg.peers.empty()) throw ConfigError("no peer given (--peer host:port)");
    net::TcpTransport peer(cfg.peers.front());
    const std::size_t n = c.pull_peer(peer);
    std::cout << n << " new revision(s) from " << cfg.peers.front().to_string()
              << "; head " << short_id(ws.replica.head()) << "\n";
    return kOk;
  }
  if (cmd == "history") {
    try {
      c.sync();
    } catch (const ConnectionError& e) {
      std::cerr << "warning: showing local history only: " << e.what() << "\n";
    }
    std::cout << c.history();
    return kOk;
  }
  throw ConfigError("unknown command '" + cmd + "'");
}

int client_command(const ClientArgs& args) {
  client::Workspace ws = client::Workspace::open(args.workspace, args.file);
  if (!args.edit.empty()) ws.working = store::read_file(args.edit);
  const client::ClientConfig cfg = resolve_config(args);
  if (!cfg.server) throw ConfigError("no server given (--server host:port)");

  net::TcpTransport server(*cfg.server);
  client::Client c(cfg, server, ws);
  int code = kFailure;
  try {
    code = run_client_command(args, c, ws, cfg);
  } catch (...) {
    ws.save();
    for (const auto& w : c.warnings()) std::cerr << "warning: " << w << "\n";
    throw;
  }
  ws.save();
  for (const auto& w : c.warnings()) std::cerr << "warning: " << w << "\n";
  return code;
}

int serve_peer(const ClientArgs& args) {
  block_shutdown_signals();
  const fs::path root = args.workspace;
  const std::string file = args.file;
  // Validate once up front so a bad workspace fails fast.
  client::Workspace::open(root, file);
  client::PeerService peer(file, [root, file] {
    return client::Workspace::open(root, file).replica;
  });
  net::LineServer listener(args.port,
                           [&](const net::Json& r) { return peer.handle(r); });
  std::cout << "coco peer serving " << file << " on port " << listener.port()
            << std::endl;
  wait_for_shutdown_signal();
  listener.stop();
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coco: collaborative file sync"};
  app.require_subcommand(1);

  ServeArgs serve_args;
  auto* serve_cmd = app.add_subcommand("serve", "run the sync server");
  serve_cmd->add_option("--port", serve_args.port, "TCP port (0 picks one)");
  serve_cmd->add_option("--data", serve_args.data, "directory for file histories");
  serve_cmd->add_option("--lease-ms", serve_args.lease_ms, "lock lease in milliseconds")
      ->check(CLI::PositiveNumber);

  ClientArgs client_args;
  const std::pair<const char*, const char*> commands[] = {
      {"checkout", "refresh the working copy (and lock it in auto mode)"},
      {"checkin", "send local changes to the server"},
      {"sync", "pull new revisions from the server"},
      {"history", "print the revision log"},
      {"resolve", "settle a recorded conflict"},
      {"pull-peer", "pull revisions from another client"},
      {"lock", "take the file lock (manual mode)"},
      {"release", "give the file lock back"},
  };
  std::vector<CLI::App*> client_cmds;
  for (const auto& [name, help] : commands) {
    auto* cmd = app.add_subcommand(name, help);
    cmd->add_option("file", client_args.file, "shared file name")->required();
    cmd->add_option("--workspace", client_args.workspace, "workspace directory");
    cmd->add_option("--server", client_args.server, "server host:port");
    cmd->add_option("--user", client_args.user);
    cmd->add_option("--device", client_args.device);
    cmd->add_option("--mode", client_args.mode, "auto or manual");
    cmd->add_option("--peer", client_args.peer, "peer host:port");
    cmd->add_option("--edit", client_args.edit,
                    "replace the working copy with this file's contents first");
    if (std::string(name) == "resolve") {
      cmd->add_option("--strategy", client_args.strategy, "ours, theirs or union")
          ->check(CLI::IsMember({"ours", "theirs", "union"}));
    }
    client_cmds.push_back(cmd);
  }

  auto* peer_cmd = app.add_subcommand("serve-peer", "serve this replica to peers");
  peer_cmd->add_option("file", client_args.file, "shared file name")->required();
  peer_cmd->add_option("--workspace", client_args.workspace, "workspace directory");
  peer_cmd->add_option("--port", client_args.port, "TCP port (0 picks one)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (serve_cmd->parsed()) return serve(serve_args);
    if (peer_cmd->parsed()) return serve_peer(client_args);
    for (auto* cmd : client_cmds) {
      if (cmd->parsed()) {
        client_args.command = cmd->get_name();
        return client_command(client_args);
      }
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.name() << ": " << e.what() << "\n";
    return kFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kFailure;
}
