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


#include "coco/merge/merge.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

namespace coco::merge {

namespace {

std::size_t footprint_end(const Hunk& h) {
  return h.base_start + std::max<std::size_t>(h.base_len, 1);
}

struct Partition {
  std::vector<Hunk> clean;                 // touched by one side only
  std::vector<ConflictRegion> conflicts;   // sorted by base_start
};

// Connected components of the cross-side overlap relation. A component with
// hunks from both sides becomes one conflict region spanning all of them.
Partition partition(const Document& base, const Changeset& ours,
                    const Changeset& theirs) {
  const std::size_t n_ours = ours.hunks.size();
  const std::size_t total = n_ours + theirs.hunks.size();
  auto hunk_at = [&](std::size_t i) -> const Hunk& {
    return i < n_ours ? ours.hunks[i] : theirs.hunks[i - n_ours];
  };

  std::vector<std::size_t> parent(total);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&parent](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };

  // Both lists are sorted, so a sweep finds every overlapping pair.
  std::size_t j_begin = 0;
  for (std::size_t i = 0; i < n_ours; ++i) {
    const Hunk& h = ours.hunks[i];
    while (j_begin < theirs.hunks.size() &&
           footprint_end(theirs.hunks[j_begin]) < h.base_start) {
      ++j_begin;
    }
    for (std::size_t j = j_begin; j < theirs.hunks.size(); ++j) {
      const Hunk& g = theirs.hunks[j];
      if (g.base_start > footprint_end(h)) break;
      if (hunks_overlap(h, g)) parent[find(i)] = find(n_ours + j);
    }
  }

  std::vector<std::vector<std::size_t>> groups;
  std::vector<long> group_of(total, -1);
  for (std::size_t i = 0; i < total; ++i) {
    const std::size_t root = find(i);
    if (group_of[root] < 0) {
      group_of[root] = static_cast<long>(groups.size());
      groups.emplace_back();
    }
    groups[group_of[root]].push_back(i);
  }

  Partition out;
  for (const auto& members : groups) {
    if (members.size() == 1) {
      out.clean.push_back(hunk_at(members.front()));
      continue;
    }
    std::size_t start = hunk_at(members.front()).base_start;
    std::size_t end = hunk_at(members.front()).base_end();
    for (std::size_t i : members) {
      start = std::min(start, hunk_at(i).base_start);
      end = std::max(end, hunk_at(i).base_end());
    }
    Document slice;
    slice.lines.assign(base.lines.begin() + start, base.lines.begin() + end);
    Changeset local_ours, local_theirs;
    for (std::size_t i : members) {
      Hunk shifted = hunk_at(i);
      shifted.base_start -= start;
      (i < n_ours ? local_ours : local_theirs).hunks.push_back(
          std::move(shifted));
    }
    auto by_start = [](const Hunk& x, const Hunk& y) {
      return x.base_start < y.base_start;
    };
    std::sort(local_ours.hunks.begin(), local_ours.hunks.end(), by_start);
    std::sort(local_theirs.hunks.begin(), local_theirs.hunks.end(), by_start);

    ConflictRegion region;
    region.base_start = start;
    region.base_len = end - start;
    region.ours = apply(slice, local_ours).lines;
    region.theirs = apply(slice, local_theirs).lines;
    out.conflicts.push_back(std::move(region));
  }

  std::sort(out.clean.begin(), out.clean.end(),
            [](const Hunk& x, const Hunk& y) {
              return x.base_start < y.base_start;
            });
  std::sort(out.conflicts.begin(), out.conflicts.end(),
            [](const ConflictRegion& x, const ConflictRegion& y) {
              return x.base_start < y.base_start;
            });
  return out;
}

// When both sides set the flag they can only disagree if one of them
// restates the base value; the side that actually changes it wins.
std::optional<bool> merged_final_newline(const Document& base,
                                         const Changeset& ours,
                                         const Changeset& theirs) {
  if (ours.final_newline && *ours.final_newline != base.final_newline) {
    return ours.final_newline;
  }
  if (theirs.final_newline && *theirs.final_newline != base.final_newline) {
    return theirs.final_newline;
  }
  return std::nullopt;
}

}  // namespace

bool hunks_overlap(const Hunk& a, const Hunk& b) noexcept {
  return a.base_start <= footprint_end(b) && b.base_start <= footprint_end(a);
}

MergeOutcome merge3(const Document& base, const Changeset& ours,
                    const Changeset& theirs) {
  validate(ours, base.lines.size());
  validate(theirs, base.lines.size());

  Partition parts = partition(base, ours, theirs);
  if (!parts.conflicts.empty()) {
    return Conflict{std::move(parts.conflicts)};
  }
  Changeset combined;
  combined.hunks = std::move(parts.clean);
  combined.final_newline = merged_final_newline(base, ours, theirs);
  return Merged{apply(base, combined)};
}

Document merge3_resolved(const Document& base, const Changeset& ours,
                         const Changeset& theirs, Resolution how) {
  validate(ours, base.lines.size());
  validate(theirs, base.lines.size());

  Partition parts = partition(base, ours, theirs);
  Changeset combined;
  combined.hunks = std::move(parts.clean);
  for (ConflictRegion& region : parts.conflicts) {
    Hunk settled{region.base_start, region.base_len, {}};
    switch (how) {
      case Resolution::kOurs:
        settled.replacement = std::move(region.ours);
        break;
      case Resolution::kTheirs:
        settled.replacement = std::move(region.theirs);
        break;
      case Resolution::kUnion:
        settled.replacement = std::move(region.ours);
        settled.replacement.insert(settled.replacement.end(),
                                   region.theirs.begin(), region.theirs.end());
        break;
    }
    if (settled.base_len == 0 && settled.replacement.empty()) continue;
    combined.hunks.push_back(std::move(settled));
  }
  std::sort(combined.hunks.begin(), combined.hunks.end(),
            [](const Hunk& x, const Hunk& y) {
              return x.base_start < y.base_start;
            });
  combined.final_newline = merged_final_newline(base, ours, theirs);
  return apply(base, combined);
}

}  // namespace coco::merge
