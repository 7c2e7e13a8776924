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
#include <optional>
#include <string>
#include <vector>

#include "coco/merge/document.hpp"

namespace coco::merge {

// Replace `base_len` lines starting at `base_start` with `replacement`.
// A pure insertion has base_len == 0; a pure deletion has an empty
// replacement. A hunk that does neither is malformed.
struct Hunk {
  std::size_t base_start = 0;
  std::size_t base_len = 0;
  std::vector<std::string> replacement;

  std::size_t base_end() const { return base_start + base_len; }
  // Number of lines this hunk touches on either side.
  std::size_t edit_size() const { return base_len + replacement.size(); }

  bool operator==(const Hunk&) const = default;
};

// The transaction unit: the changed content between two versions of a file,
// not the file itself. Hunks are sorted by base_start and never overlap.
//
// `final_newline` is set only when the trailing-newline flag changes, so an
// empty changeset really means "no change".
struct Changeset {
  std::vector<Hunk> hunks;
  std::optional<bool> final_newline;

  bool empty() const { return hunks.empty() && !final_newline.has_value(); }
  std::size_t edit_size() const;

  bool operator==(const Changeset&) const = default;
};

// Throws PatchRangeError unless every hunk is well formed, the hunks are
// strictly ordered and disjoint, and all of them fit inside a base of
// `base_size` lines.
void validate(const Changeset& cs, std::size_t base_size);

// Applies `cs` to `base`. Throws PatchRangeError when validate() would.
Document apply(const Document& base, const Changeset& cs);

}  // namespace coco::merge
