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

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "coco/merge/changeset.hpp"
#include "coco/merge/document.hpp"

namespace coco::merge {

// Two hunks against the same base conflict when their footprints
// [start, start + max(len, 1)) intersect or touch. Touching counts so that
// two edits on neighbouring lines are never interleaved silently.
bool hunks_overlap(const Hunk& a, const Hunk& b) noexcept;

// A span of the base that both sides changed, with what each side wanted
// there.
struct ConflictRegion {
  std::size_t base_start = 0;
  std::size_t base_len = 0;
  std::vector<std::string> ours;
  std::vector<std::string> theirs;

  bool operator==(const ConflictRegion&) const = default;
};

struct Merged {
  Document result;
  bool operator==(const Merged&) const = default;
};

struct Conflict {
  std::vector<ConflictRegion> regions;  // never empty, sorted by base_start
  bool operator==(const Conflict&) const = default;
};

using MergeOutcome = std::variant<Merged, Conflict>;

// Three-way merge of two changesets computed against the same base.
// Throws PatchRangeError if either changeset does not fit `base`.
MergeOutcome merge3(const Document& base, const Changeset& ours,
                    const Changeset& theirs);

enum class Resolution { kOurs, kTheirs, kUnion };

// Like merge3, but settles each conflicting region by `how` instead of
// giving up. kUnion keeps our lines followed by theirs.
Document merge3_resolved(const Document& base, const Changeset& ours,
                         const Changeset& theirs, Resolution how);

}  // namespace coco::merge
