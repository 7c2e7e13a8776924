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


#include "coco/merge/diff.hpp"

#include <cstddef>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace coco::merge {

namespace {

enum class Op { kDelete, kInsert };

struct Edit {
  Op op;
  std::size_t x;  // position in the old sequence
  std::size_t y;  // position in the new sequence
};

// Interns lines so the search compares integers.
std::pair<std::vector<int>, std::vector<int>> intern(
    const std::vector<std::string>& a, const std::vector<std::string>& b,
    std::size_t prefix, std::size_t suffix) {
  std::unordered_map<std::string_view, int> ids;
  auto id_of = [&ids](const std::string& line) {
    auto [it, inserted] = ids.try_emplace(line, static_cast<int>(ids.size()));
    return it->second;
  };
  std::vector<int> ai, bi;
  ai.reserve(a.size() - prefix - suffix);
  bi.reserve(b.size() - prefix - suffix);
  for (std::size_t i = prefix; i < a.size() - suffix; ++i)
    ai.push_back(id_of(a[i]));
  for (std::size_t i = prefix; i < b.size() - suffix; ++i)
    bi.push_back(id_of(b[i]));
  return {std::move(ai), std::move(bi)};
}

// Myers' greedy shortest edit script. Keeps one frontier per edit distance,
// each only as wide as the diagonals it can reach, so memory is O(D^2).
std::vector<Edit> shortest_edit_script(const std::vector<int>& a,
                                       const std::vector<int>& b) {
  const long n = static_cast<long>(a.size());
  const long m = static_cast<long>(b.size());
  std::vector<std::vector<long>> frontiers;

  // frontier(d)[k + d] is the furthest x reached on diagonal k with d edits.
  auto at = [&frontiers](long d, long k) -> long {
    return frontiers[d][k + d];
  };

  long final_d = -1;
  for (long d = 0; d <= n + m && final_d < 0; ++d) {
    std::vector<long> row(2 * d + 1, 0);
    for (long k = -d; k <= d; k += 2) {
      long x;
      if (d == 0) {
        x = 0;
      } else if (k == -d || (k != d && at(d - 1, k - 1) < at(d - 1, k + 1))) {
        x = at(d - 1, k + 1);
      } else {
        x = at(d - 1, k - 1) + 1;
      }
      long y = x - k;
      while (x < n && y < m && a[x] == b[y]) {
        ++x;
        ++y;
      }
      row[k + d] = x;
      if (x >= n && y >= m) final_d = d;
    }
    frontiers.push_back(std::move(row));
  }

  std::vector<Edit> edits;
  edits.reserve(static_cast<std::size_t>(final_d));
  long x = n;
  long y = m;
  for (long d = final_d; d > 0; --d) {
    const long k = x - y;
    const bool down =
        k == -d || (k != d && at(d - 1, k - 1) < at(d - 1, k + 1));
    const long prev_k = down ? k + 1 : k - 1;
    const long prev_x = at(d - 1, prev_k);
    const long prev_y = prev_x - prev_k;
    if (down) {
      edits.push_back({Op::kInsert, static_cast<std::size_t>(prev_x),
                       static_cast<std::size_t>(prev_y)});
    } else {
      edits.push_back({Op::kDelete, static_cast<std::size_t>(prev_x),
                       static_cast<std::size_t>(prev_y)});
    }
    x = prev_x;
    y = prev_y;
  }
  return {edits.rbegin(), edits.rend()};
}

}  // namespace

Changeset diff(const Document& base, const Document& modified) {
  const auto& a = base.lines;
  const auto& b = modified.lines;

  std::size_t prefix = 0;
  while (prefix < a.size() && prefix < b.size() && a[prefix] == b[prefix]) {
    ++prefix;
  }
  std::size_t suffix = 0;
  while (suffix < a.size() - prefix && suffix < b.size() - prefix &&
         a[a.size() - 1 - suffix] == b[b.size() - 1 - suffix]) {
    ++suffix;
  }

  Changeset cs;
  if (base.final_newline != modified.final_newline) {
    cs.final_newline = modified.final_newline;
  }

  const auto [ai, bi] = intern(a, b, prefix, suffix);
  const std::vector<Edit> edits = shortest_edit_script(ai, bi);

  // Runs of edits with no matched line in between become one hunk.
  std::size_t open_y = 0;  // position in `modified` where the open hunk began
  for (const Edit& e : edits) {
    const std::size_t x = e.x + prefix;
    const std::size_t y = e.y + prefix;
    Hunk* open = cs.hunks.empty() ? nullptr : &cs.hunks.back();
    const bool continues = open != nullptr && open->base_end() == x &&
                           open_y + open->replacement.size() == y;
    if (!continues) {
      cs.hunks.push_back(Hunk{x, 0, {}});
      open = &cs.hunks.back();
      open_y = y;
    }
    if (e.op == Op::kDelete) {
      ++open->base_len;
    } else {
      open->replacement.push_back(b[y]);
    }
  }
  return cs;
}

}  // namespace coco::merge
