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

#include <filesystem>
#include <optional>

#include "coco/store/graph.hpp"
#include "coco/store/revision.hpp"

namespace coco::store {

// On-disk layout of one replica:
//
//   <dir>/revisions/<id>.rev   one encode_revision() record per revision
//   <dir>/HEAD                 the head id and a newline, or empty
//
// Files are written to a temporary name and renamed into place.

// Writes the whole graph and removes revision files that are not in it.
// Throws IoError.
void save(const RevisionGraph& graph, const std::filesystem::path& dir);

// A missing directory loads as the empty graph.
// Throws IntegrityError on a corrupt record, IoError on read failure.
RevisionGraph load(const std::filesystem::path& dir);

// Incremental writers for a graph that grows one revision at a time.
void write_revision(const std::filesystem::path& dir, const Revision& rev);
void write_head(const std::filesystem::path& dir,
                const std::optional<RevisionId>& head);

// Atomic small-file helpers shared with the client workspace.
void write_file_atomic(const std::filesystem::path& path,
                       std::string_view bytes);
std::string read_file(const std::filesystem::path& path);

}  // namespace coco::store
