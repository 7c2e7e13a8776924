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

// Test-only reference implementations. Nothing in here calls into the merge
// library's diff or merge paths, so the checks built on top of it stay
// independent of the code they check.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "coco/merge/changeset.hpp"
#include "coco/merge/document.hpp"

namespace coco::testing {

// LCS length by exhaustive search over every subsequence of `a`.
// Exponential; keep |a| <= 12.
inline std::size_t brute_force_lcs(const std::vector<std::string>& a,
                                   const std::vector<std::string>& b) {
  std::size_t best = 0;
  const std::uint32_t limit = 1u << a.size();
  for (std::uint32_t mask = 0; mask < limit; ++mask) {
    const auto count = static_cast<std::size_t>(__builtin_popcount(mask));
    if (count <= best) continue;
    std::size_t j = 0;
    bool ok = true;
    for (std::size_t i = 0; i < a.size() && ok; ++i) {
      if (!(mask & (1u << i))) continue;
      while (j < b.size() && b[j] != a[i]) ++j;
      if (j == b.size()) ok = false;
      else ++j;
    }
    if (ok) best = count;
  }
  return best;
}

// Minimal number of deleted plus inserted lines.
inline std::size_t brute_force_edit_size(const std::vector<std::string>& a,
                                         const std::vector<std::string>& b) {
  return a.size() + b.size() - 2 * brute_force_lcs(a, b);
}

// Footprint of a hunk as an explicit set of base indices.
inline std::vector<std::size_t> footprint(const merge::Hunk& h) {
  std::vector<std::size_t> out;
  const std::size_t width = std::max<std::size_t>(h.base_len, 1);
  for (std::size_t i = 0; i < width; ++i) out.push_back(h.base_start + i);
  return out;
}

// Two footprints conflict when some pair of their indices is at distance
// <= 1.
inline bool footprints_touch(const merge::Hunk& a, const merge::Hunk& b) {
  for (std::size_t i : footprint(a)) {
    for (std::size_t j : footprint(b)) {
      if ((i > j ? i - j : j - i) <= 1) return true;
    }
  }
  return false;
}

// Applies hunks one at a time from the back of the document, each against
// the running result. Independent of merge::apply.
inline std::vector<std::string> apply_back_to_front(
    std::vector<std::string> lines, std::vector<merge::Hunk> hunks) {
  std::sort(hunks.begin(), hunks.end(),
            [](const merge::Hunk& x, const merge::Hunk& y) {
              return x.base_start > y.base_start;
            });
  for (const merge::Hunk& h : hunks) {
    lines.erase(lines.begin() + h.base_start,
                lines.begin() + h.base_start + h.base_len);
    lines.insert(lines.begin() + h.base_start, h.replacement.begin(),
                 h.replacement.end());
  }
  return lines;
}

// Rebases `later` onto the result of applying `first`: every hunk of `later`
// moves by the net growth of the `first` hunks that precede it.
inline std::vector<merge::Hunk> shift_past(
    const std::vector<merge::Hunk>& first,
    const std::vector<merge::Hunk>& later) {
  std::vector<merge::Hunk> out;
  for (merge::Hunk h : later) {
    long delta = 0;
    for (const merge::Hunk& f : first) {
      if (f.base_start < h.base_start) {
        delta += static_cast<long>(f.replacement.size()) -
                 static_cast<long>(f.base_len);
      }
    }
    h.base_start = static_cast<std::size_t>(static_cast<long>(h.base_start) +
                                            delta);
    out.push_back(std::move(h));
  }
  return out;
}

// Documents over a small alphabet so diffs find plenty of matches.
inline merge::Document random_document(std::mt19937_64& rng,
                                       std::size_t max_lines,
                                       int alphabet = 6) {
  std::uniform_int_distribution<std::size_t> len(0, max_lines);
  std::uniform_int_distribution<int> sym(0, alphabet - 1);
  merge::Document doc;
  const std::size_t n = len(rng);
  for (std::size_t i = 0; i < n; ++i) {
    doc.lines.push_back(std::string(1, static_cast<char>('a' + sym(rng))));
  }
  doc.final_newline = !doc.lines.empty() && (rng() & 1);
  return doc;
}

// A random edit of `base`: a few local insert/delete/replace operations.
inline merge::Document random_edit(std::mt19937_64& rng,
                                   const merge::Document& base,
                                   std::size_t max_lines, int alphabet = 6) {
  merge::Document out = base;
  std::uniform_int_distribution<int> ops(0, 4);
  std::uniform_int_distribution<int> sym(0, alphabet + 3);
  const int n_ops = ops(rng);
  for (int k = 0; k < n_ops; ++k) {
    const std::size_t size = out.lines.size();
    std::uniform_int_distribution<std::size_t> pos(0, size);
    const std::size_t at = pos(rng);
    const std::string line(1, static_cast<char>('a' + sym(rng)));
    switch (rng() % 3) {
      case 0:
        if (size < max_lines) out.lines.insert(out.lines.begin() + at, line);
        break;
      case 1:
        if (at < size) out.lines.erase(out.lines.begin() + at);
        break;
      default:
        if (at < size) out.lines[at] = line;
        break;
    }
  }
  if (rng() % 8 == 0) out.final_newline = !out.final_newline;
  if (out.lines.empty()) out.final_newline = false;
  return out;
}

}  // namespace coco::testing
