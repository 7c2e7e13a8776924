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
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <vector>

#include "coco/merge/changeset.hpp"
#include "coco/merge/document.hpp"
#include "coco/merge/merge.hpp"
#include "coco/server/clock.hpp"
#include "coco/server/file_lock.hpp"
#include "coco/server/storage.hpp"
#include "coco/store/graph.hpp"

namespace coco::server {

struct ServerOptions {
  std::chrono::milliseconds lease{60'000};
  Backoff backoff;
  // A checkout still queued after this long gets LeaseDenied.
  std::chrono::milliseconds max_wait{10 * 60'000};
  std::optional<std::filesystem::path> data_dir;  // memory only when unset
  std::size_t max_files = 10'000;
  const Clock* clock = nullptr;  // SteadyClock when null
};

struct LockGrant {
  std::uint64_t ticket = 0;
  std::optional<store::RevisionId> head;
};

struct CheckInRequest {
  std::string file;
  Principal principal;
  LockMode mode = LockMode::kAutomatic;
  std::optional<store::RevisionId> base;  // unset only for a file's first revision
  merge::Changeset changeset;
  std::optional<std::uint64_t> ticket;
  // Set when the check-in settles a recorded conflict; becomes the second
  // parent.
  std::optional<store::RevisionId> merge_parent;
};

struct CheckInResult {
  enum class Kind { kFastForward, kAutoMerged, kConflictRecorded };
  Kind kind = Kind::kFastForward;
  std::optional<store::RevisionId> head;  // server head afterwards
  store::RevisionId revision;             // the submitted change
  std::optional<store::RevisionId> merge; // kAutoMerged only
  std::vector<merge::ConflictRegion> regions;  // kConflictRecorded only
};

std::string_view to_string(CheckInResult::Kind kind);
CheckInResult::Kind check_in_kind_from_string(std::string_view text);

struct PullResult {
  std::optional<store::RevisionId> head;
  std::vector<store::Revision> revisions;  // ascending server_seq
};

// One check-in as the file's writer processed it.
struct CommitRecord {
  std::uint64_t ticket;
  std::uint64_t first_seq;
  Principal who;
};

struct FileStats {
  std::uint64_t conflicts = 0;
  std::uint64_t commits = 0;  // revisions with a server_seq
  std::optional<store::RevisionId> head;
  std::vector<CommitRecord> commit_order;
  std::vector<LockEvent> lock_events;
};

// The service daemon and cloud storage: per-file FIFO write admission,
// serialized check-ins with server-side automatic merging, history and
// plain upload/download.
//
// Handlers may run on any number of threads. For each file, every change to
// its history happens under that file's exclusive lock; readers get a
// snapshot that is a prefix of the commit sequence.
class SyncService {
 public:
  explicit SyncService(ServerOptions options = {});
  ~SyncService();
  SyncService(const SyncService&) = delete;
  SyncService& operator=(const SyncService&) = delete;

  // Blocks until this principal's turn. Throws LeaseDenied when the wait
  // exceeds max_wait or the service shuts down, ProtocolError on a bad file
  // name or principal.
  LockGrant checkout(const std::string& file, const Principal& who,
                     LockMode mode);

  // Throws NotLockHolder, UnknownRevision, PatchRangeError.
  CheckInResult checkin(const CheckInRequest& request);

  void release(const std::string& file, const Principal& who);
  void renew(const std::string& file, const Principal& who);

  PullResult pull(const std::string& file,
                  const std::set<store::RevisionId>& have) const;
  std::vector<store::Revision> history(const std::string& file) const;

  // Upload: checkout, diff against head, check in, release, under the
  // Automatic protocol. Throws EncodingError for non-text bytes.
  std::optional<store::RevisionId> put_file(const std::string& file,
                                            std::string_view bytes,
                                            const Principal& who);
  // Throws NotFound for an unknown or still empty file.
  std::string get_file(const std::string& file) const;

  FileStats stats(const std::string& file) const;

  // Wakes every queued checkout with LeaseDenied.
  void shutdown();

 private:
  struct FileState;

  FileState& file_state(const std::string& name);
  const FileState* find_file(const std::string& name) const;
  CheckInResult process(FileState& fs, const CheckInRequest& request,
                        std::uint64_t ticket);
  store::RevisionId stamp_commit(FileState& fs,
                                 const std::vector<store::RevisionId>& parents,
                                 const merge::Changeset& cs,
                                 const Principal& who);

  ServerOptions options_;
  const Clock& clock_;
  std::optional<Storage> storage_;
  std::atomic<bool> shutting_down_{false};
  mutable std::mutex files_mu_;
  std::map<std::string, std::unique_ptr<FileState>> files_;
};

}  // namespace coco::server
