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


#include "coco/client/workspace.hpp"

#include "coco/error.hpp"
#include "coco/net/json_codec.hpp"
#include "coco/store/persist.hpp"

namespace coco::client {

namespace fs = std::filesystem;
using net::Json;

namespace {

void check_file_name(const std::string& name) {
  if (name.empty() || name.front() == '.' ||
      name.find_first_of(std::string("/\\\0", 3)) != std::string::npos) {
    throw ProtocolError("bad file name '" + name + "'");
  }
}

}  // namespace

Workspace::Workspace(std::string file, std::optional<fs::path> root)
    : file_(std::move(file)), root_(std::move(root)) {
  check_file_name(file_);
}

Workspace Workspace::in_memory(std::string file) {
  return Workspace(std::move(file), std::nullopt);
}

Workspace Workspace::open(const fs::path& root, std::string file) {
  Workspace ws(std::move(file), root);
  const fs::path meta = ws.meta_dir();
  ws.replica = store::load(meta / "revs");
  if (fs::exists(meta / "state.json")) {
    Json state;
    try {
      state = Json::parse(store::read_file(meta / "state.json"));
      ws.base = net::optional_id(state, "base");
      if (state.contains("ticket") && !state["ticket"].is_null()) {
        ws.ticket = state["ticket"].get<std::uint64_t>();
      }
      if (state.contains("conflict") && !state["conflict"].is_null()) {
        const Json& c = state["conflict"];
        PendingConflict pending{
            store::RevisionId::from_hex(net::require_string(c, "branch")),
            store::RevisionId::from_hex(net::require_string(c, "head")),
            {}};
        for (const Json& r : c.at("regions")) {
          pending.regions.push_back(net::region_from_json(r));
        }
        ws.conflict = std::move(pending);
      }
    } catch (const Json::exception& e) {
      throw IntegrityError("corrupt workspace state: " + std::string(e.what()));
    }
    if (ws.base && !ws.replica.contains(*ws.base)) {
      throw IntegrityError("workspace base is missing from the replica");
    }
  }
  ws.reload_working();
  return ws;
}

fs::path Workspace::meta_dir() const { return *root_ / ".coco" / file_; }

merge::Document Workspace::base_document() const {
  return base ? replica.materialize(*base) : merge::Document{};
}

merge::Document Workspace::working_document() const {
  return merge::normalize(working);
}

bool Workspace::dirty() const {
  return working_document() != base_document();
}

void Workspace::reload_working() {
  if (!root_) return;
  const fs::path path = *root_ / file_;
  working = fs::exists(path) ? store::read_file(path) : std::string();
}

void Workspace::save() const {
  if (!root_) return;
  const fs::path meta = meta_dir();
  fs::create_directories(meta);
  store::save(replica, meta / "revs");

  Json state{{"base", net::id_or_null(base)}, {"ticket", nullptr},
             {"conflict", nullptr}};
  if (ticket) state["ticket"] = *ticket;
  if (conflict) {
    Json regions = Json::array();
    for (const auto& r : conflict->regions) regions.push_back(net::to_json(r));
    state["conflict"] = Json{{"branch", conflict->branch.hex()},
                             {"head", conflict->head.hex()},
                             {"regions", std::move(regions)}};
  }
  store::write_file_atomic(meta / "state.json", state.dump(2) + "\n");
  store::write_file_atomic(*root_ / file_, working);
}

}  // namespace coco::client
