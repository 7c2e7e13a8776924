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


#include "coco/merge/changeset.hpp"

#include <string>

#include "coco/error.hpp"

namespace coco::merge {

std::size_t Changeset::edit_size() const {
  std::size_t total = 0;
  for (const auto& h : hunks) total += h.edit_size();
  return total;
}

void validate(const Changeset& cs, std::size_t base_size) {
  std::size_t floor = 0;
  for (std::size_t i = 0; i < cs.hunks.size(); ++i) {
    const Hunk& h = cs.hunks[i];
    if (h.base_len == 0 && h.replacement.empty()) {
      throw PatchRangeError("hunk " + std::to_string(i) + " changes nothing");
    }
    if (h.base_start > base_size || h.base_len > base_size - h.base_start) {
      throw PatchRangeError("hunk " + std::to_string(i) + " at " +
                            std::to_string(h.base_start) + "+" +
                            std::to_string(h.base_len) +
                            " exceeds base of " + std::to_string(base_size) +
                            " lines");
    }
    // Strict ordering: a hunk may start where the previous one ended only if
    // the previous one removed lines; two insertions at one point are
    // ambiguous.
    if (i > 0) {
      const Hunk& prev = cs.hunks[i - 1];
      if (h.base_start < floor || h.base_start == prev.base_start) {
        throw PatchRangeError("hunks " + std::to_string(i - 1) + " and " +
                              std::to_string(i) + " overlap or are unordered");
      }
    }
    floor = h.base_end();
  }
}

Document apply(const Document& base, const Changeset& cs) {
  validate(cs, base.lines.size());
  Document out;
  out.final_newline = cs.final_newline.value_or(base.final_newline);
  out.lines.reserve(base.lines.size());
  std::size_t cursor = 0;
  for (const Hunk& h : cs.hunks) {
    out.lines.insert(out.lines.end(), base.lines.begin() + cursor,
                     base.lines.begin() + h.base_start);
    out.lines.insert(out.lines.end(), h.replacement.begin(),
                     h.replacement.end());
    cursor = h.base_end();
  }
  out.lines.insert(out.lines.end(), base.lines.begin() + cursor,
                   base.lines.end());
  if (out.lines.empty()) out.final_newline = false;
  return out;
}

}  // namespace coco::merge
