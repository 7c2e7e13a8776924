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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "coco/client/config.hpp"
#include "coco/client/workspace.hpp"
#include "coco/merge/merge.hpp"
#include "coco/net/transport.hpp"

namespace coco::client {

struct CheckInOutcome {
  enum class Kind { kNoChange, kFastForward, kAutoMerged, kConflictRecorded };

  Kind kind = Kind::kNoChange;
  std::optional<store::RevisionId> head;
  std::optional<store::RevisionId> revision;
  std::optional<store::RevisionId> merge;
  std::vector<merge::ConflictRegion> regions;
};

std::string_view to_string(CheckInOutcome::Kind kind);

// Drives one workspace against a server. Every command is a short burst of
// synchronous request/reply exchanges; nothing runs in the background.
class Client {
 public:
  Client(ClientConfig config, net::Transport& server, Workspace& ws);

  // Automatic mode takes the file lock, then syncs. Manual mode only syncs.
  std::optional<std::uint64_t> checkout();

  // Sends diff(base, working copy) in a single checkin message. Automatic
  // mode takes the lock first if needed and releases it afterwards.
  CheckInOutcome checkin();

  // Pulls from the server. The working copy follows the new head unless it
  // has local edits or a conflict is pending. Returns the number of new
  // revisions.
  std::size_t sync();

  // Same as sync() but against another client's replica.
  std::size_t pull_peer(net::Transport& peer);

  // The local replica's log, oldest first, one row per revision.
  std::string history() const;

  // Settles the pending conflict and checks in a two-parent revision.
  // Throws NothingToResolve when there is none.
  CheckInOutcome resolve(merge::Resolution how);

  // Explicit lock handling for Manual mode.
  std::uint64_t lock();
  void release();

  // Things the user should hear about, e.g. a working copy left behind.
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  net::Json request(std::string_view op) const;
  net::Json pull_request() const;
  std::size_t absorb(const net::Json& reply);
  void follow_head();
  bool working_dirty() const;
  void acquire_if_needed();
  void release_quietly();
  CheckInOutcome send_checkin(const std::optional<store::RevisionId>& base,
                              const std::optional<store::RevisionId>& merge_parent,
                              const merge::Changeset& cs);

  ClientConfig config_;
  net::Transport& server_;
  Workspace& ws_;
  std::vector<std::string> warnings_;
};

// Renders a replica's log as a table.
std::string render_history(const store::RevisionGraph& replica);

}  // namespace coco::client
