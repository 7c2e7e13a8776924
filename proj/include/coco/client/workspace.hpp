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
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "coco/merge/document.hpp"
#include "coco/merge/merge.hpp"
#include "coco/store/graph.hpp"

namespace coco::client {

// A check-in the server kept on a side branch because it could not be
// merged. `branch` is our revision, `head` the server head at that time.
struct PendingConflict {
  store::RevisionId branch;
  store::RevisionId head;
  std::vector<merge::ConflictRegion> regions;

  bool operator==(const PendingConflict&) const = default;
};

// One client's view of one shared file: the working copy, the revision it
// was materialized from and a full local replica of the history.
//
// A workspace opened on a directory keeps the working copy at <root>/<file>
// and its bookkeeping under <root>/.coco/<file>/. An in-memory workspace
// keeps everything in the object.
class Workspace {
 public:
  static Workspace in_memory(std::string file);
  static Workspace open(const std::filesystem::path& root, std::string file);

  const std::string& file() const { return file_; }
  const std::optional<std::filesystem::path>& root() const { return root_; }

  std::string working;  // raw bytes of the working copy
  std::optional<store::RevisionId> base;
  store::RevisionGraph replica;
  std::optional<PendingConflict> conflict;
  std::optional<std::uint64_t> ticket;  // lock held across invocations

  merge::Document base_document() const;
  merge::Document working_document() const;  // throws EncodingError
  bool dirty() const;

  // Re-reads the working copy from disk. No-op in memory.
  void reload_working();
  // Writes everything back. No-op in memory.
  void save() const;

 private:
  Workspace(std::string file, std::optional<std::filesystem::path> root);

  std::filesystem::path meta_dir() const;

  std::string file_;
  std::optional<std::filesystem::path> root_;
};

}  // namespace coco::client
