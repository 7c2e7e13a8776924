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


#include <random>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "coco/error.hpp"
#include "coco/merge/changeset.hpp"
#include "coco/merge/diff.hpp"
#include "coco/merge/document.hpp"
#include "coco/merge/merge.hpp"
#include "doctest.h"
#include "support/oracles.hpp"

using namespace coco::merge;
using coco::testing::brute_force_edit_size;

namespace {

Document doc(std::vector<std::string> lines) {
  return make_document(std::move(lines), true);
}

std::set<std::pair<std::size_t, std::size_t>> region_set(
    const MergeOutcome& m) {
  std::set<std::pair<std::size_t, std::size_t>> out;
  for (const auto& r : std::get<Conflict>(m).regions) {
    out.insert({r.base_start, r.base_len});
  }
  return out;
}

}  // namespace

TEST_CASE("normalize folds CRLF and records the trailing newline") {
  Document d = normalize("a\r\nb\n");
  CHECK(d.lines == std::vector<std::string>{"a", "b"});
  CHECK(d.final_newline);

  d = normalize("");
  CHECK(d.lines.empty());
  CHECK_FALSE(d.final_newline);

  d = normalize("a");
  CHECK(d.lines == std::vector<std::string>{"a"});
  CHECK_FALSE(d.final_newline);

  d = normalize("\n\n");
  CHECK(d.lines == std::vector<std::string>{"", ""});
  CHECK(d.final_newline);
  CHECK(render(d) == "\n\n");
}

TEST_CASE("normalize rejects malformed UTF-8 and binary") {
  CHECK_THROWS_AS(normalize("\xff\xfe"), coco::EncodingError);
  CHECK_THROWS_AS(normalize("\xc0\xaf"), coco::EncodingError);  // overlong
  CHECK_THROWS_AS(normalize("\xed\xa0\x80"), coco::EncodingError);  // surrogate
  CHECK_THROWS_AS(normalize("abc\xe2\x82"), coco::EncodingError);  // truncated
  CHECK_THROWS_AS(normalize(std::string("a\0b", 3)), coco::EncodingError);
  CHECK(normalize("caf\xc3\xa9 \xf0\x9f\x98\x80").lines.size() == 1);
}

TEST_CASE("normalize is idempotent through render") {
  std::mt19937_64 rng(7);
  const char pieces[][4] = {"a", "b", "\n", "\r\n", "\r", " ", "\xc3\xa9"};
  for (int trial = 0; trial < 2000; ++trial) {
    std::string raw;
    const int len = static_cast<int>(rng() % 12);
    for (int i = 0; i < len; ++i) raw += pieces[rng() % 7];
    const Document once = normalize(raw);
    const Document twice = normalize(render(once));
    REQUIRE(once == twice);
    for (const auto& line : once.lines) {
      REQUIRE(line.find('\n') == std::string::npos);
    }
  }
}

TEST_CASE("diff examples") {
  const Document x = doc({"a", "b", "c"});
  CHECK(diff(x, x).empty());

  Changeset cs = diff(doc({"a", "b", "c"}), doc({"a", "x", "c"}));
  REQUIRE(cs.hunks.size() == 1);
  CHECK(cs.hunks[0] == Hunk{1, 1, {"x"}});
  CHECK(cs.edit_size() ==
        brute_force_edit_size({"a", "b", "c"}, {"a", "x", "c"}));

  cs = diff(doc({"a"}), doc({"a", "b"}));
  REQUIRE(cs.hunks.size() == 1);
  CHECK(cs.hunks[0] == Hunk{1, 0, {"b"}});
  CHECK(cs.edit_size() == brute_force_edit_size({"a"}, {"a", "b"}));
}

TEST_CASE("diff carries a final newline change") {
  Changeset cs = diff(make_document({"a"}, true), make_document({"a"}, false));
  CHECK(cs.hunks.empty());
  REQUIRE(cs.final_newline.has_value());
  CHECK_FALSE(*cs.final_newline);
  CHECK(apply(make_document({"a"}, true), cs) == make_document({"a"}, false));
}

TEST_CASE("apply examples and range errors") {
  const Document x = doc({"a", "b", "c"});
  CHECK(apply(x, Changeset{}) == x);
  CHECK(apply(x, Changeset{{Hunk{1, 1, {"x"}}}, {}}) == doc({"a", "x", "c"}));
  CHECK_THROWS_AS(apply(doc({"a"}), Changeset{{Hunk{5, 1, {"z"}}}, {}}),
                  coco::PatchRangeError);
  CHECK_THROWS_AS(apply(x, Changeset{{Hunk{1, 0, {}}}, {}}),
                  coco::PatchRangeError);
  // Out of order and overlapping hunk lists.
  CHECK_THROWS_AS(
      apply(x, Changeset{{Hunk{2, 1, {"q"}}, Hunk{0, 1, {"p"}}}, {}}),
      coco::PatchRangeError);
  CHECK_THROWS_AS(
      apply(x, Changeset{{Hunk{0, 2, {"p"}}, Hunk{1, 1, {"q"}}}, {}}),
      coco::PatchRangeError);
  // Insertion at the very end is in bounds.
  CHECK(apply(x, Changeset{{Hunk{3, 0, {"d"}}}, {}}) ==
        doc({"a", "b", "c", "d"}));
}

TEST_CASE("hunks_overlap examples") {
  CHECK_FALSE(hunks_overlap(Hunk{0, 1, {"x"}}, Hunk{5, 1, {"y"}}));
  CHECK(hunks_overlap(Hunk{2, 2, {"x"}}, Hunk{3, 1, {"y"}}));
  CHECK(hunks_overlap(Hunk{2, 1, {"x"}}, Hunk{3, 1, {"y"}}));
  CHECK_FALSE(hunks_overlap(Hunk{0, 1, {"x"}}, Hunk{2, 1, {"y"}}));
}

TEST_CASE("hunks_overlap matches the footprint oracle on 3-line documents") {
  const Document base = doc({"l0", "l1", "l2"});
  std::vector<Hunk> all;
  for (std::size_t start = 0; start <= 3; ++start) {
    for (std::size_t len = 0; start + len <= 3; ++len) {
      all.push_back(Hunk{start, len, {"n"}});
      if (len > 0) all.push_back(Hunk{start, len, {}});
    }
  }
  for (const Hunk& a : all) {
    for (const Hunk& b : all) {
      const bool predicted = hunks_overlap(a, b);
      REQUIRE(predicted == coco::testing::footprints_touch(a, b));
      REQUIRE(predicted == hunks_overlap(b, a));
      if (predicted) continue;
      // Non-overlapping pairs must merge the same way in both orders.
      std::vector<Hunk> ours{a}, theirs{b};
      auto one = coco::testing::apply_back_to_front(
          coco::testing::apply_back_to_front(base.lines, ours),
          coco::testing::shift_past(ours, theirs));
      auto two = coco::testing::apply_back_to_front(
          coco::testing::apply_back_to_front(base.lines, theirs),
          coco::testing::shift_past(theirs, ours));
      REQUIRE(one == two);
      auto merged = merge3(base, Changeset{ours, {}}, Changeset{theirs, {}});
      REQUIRE(std::holds_alternative<Merged>(merged));
      REQUIRE(std::get<Merged>(merged).result.lines == one);
    }
  }
}

TEST_CASE("merge3 examples") {
  const Document b = doc({"a", "b", "c"});
  const Changeset t{{Hunk{1, 1, {"B"}}}, {}};
  auto one_sided = merge3(b, Changeset{}, t);
  REQUIRE(std::holds_alternative<Merged>(one_sided));
  CHECK(std::get<Merged>(one_sided).result == apply(b, t));

  auto both = merge3(b, Changeset{{Hunk{0, 1, {"A"}}}, {}},
                     Changeset{{Hunk{2, 1, {"C"}}}, {}});
  REQUIRE(std::holds_alternative<Merged>(both));
  CHECK(std::get<Merged>(both).result == doc({"A", "b", "C"}));
  // Same answer whichever side lands first.
  CHECK(apply(apply(b, Changeset{{Hunk{0, 1, {"A"}}}, {}}),
              Changeset{{Hunk{2, 1, {"C"}}}, {}}) == doc({"A", "b", "C"}));
  CHECK(apply(apply(b, Changeset{{Hunk{2, 1, {"C"}}}, {}}),
              Changeset{{Hunk{0, 1, {"A"}}}, {}}) == doc({"A", "b", "C"}));

  auto clash = merge3(doc({"a", "b"}), Changeset{{Hunk{0, 1, {"x"}}}, {}},
                      Changeset{{Hunk{0, 1, {"y"}}}, {}});
  REQUIRE(std::holds_alternative<Conflict>(clash));
  const auto& regions = std::get<Conflict>(clash).regions;
  REQUIRE(regions.size() == 1);
  CHECK(regions[0].base_start == 0);
  CHECK(regions[0].base_len == 1);
  CHECK(regions[0].ours == std::vector<std::string>{"x"});
  CHECK(regions[0].theirs == std::vector<std::string>{"y"});
}

TEST_CASE("merge3 rejects changesets that do not fit the base") {
  CHECK_THROWS_AS(merge3(doc({"a"}), Changeset{{Hunk{3, 1, {"x"}}}, {}},
                         Changeset{}),
                  coco::PatchRangeError);
  CHECK_THROWS_AS(merge3(doc({"a"}), Changeset{},
                         Changeset{{Hunk{0, 2, {"x"}}}, {}}),
                  coco::PatchRangeError);
}

TEST_CASE("merge3 groups chained overlaps into one region") {
  const Document b = doc({"0", "1", "2", "3", "4", "5"});
  // Theirs spans lines 1..4 and touches two separate hunks of ours.
  const Changeset ours{{Hunk{1, 1, {"o1"}}, Hunk{4, 1, {"o4"}}}, {}};
  const Changeset theirs{{Hunk{2, 2, {"t"}}}, {}};
  auto m = merge3(b, ours, theirs);
  REQUIRE(std::holds_alternative<Conflict>(m));
  const auto& r = std::get<Conflict>(m).regions;
  REQUIRE(r.size() == 1);
  CHECK(r[0].base_start == 1);
  CHECK(r[0].base_len == 4);
  CHECK(r[0].ours == std::vector<std::string>{"o1", "2", "3", "o4"});
  CHECK(r[0].theirs == std::vector<std::string>{"1", "t", "4"});
}

TEST_CASE("merge3_resolved settles conflict regions per strategy") {
  const Document b = doc({"a", "b", "c", "d", "e"});
  const Changeset ours{{Hunk{0, 1, {"x"}}, Hunk{4, 1, {"E"}}}, {}};
  const Changeset theirs{{Hunk{0, 1, {"y"}}}, {}};
  CHECK(merge3_resolved(b, ours, theirs, Resolution::kOurs) ==
        doc({"x", "b", "c", "d", "E"}));
  CHECK(merge3_resolved(b, ours, theirs, Resolution::kTheirs) ==
        doc({"y", "b", "c", "d", "E"}));
  CHECK(merge3_resolved(b, ours, theirs, Resolution::kUnion) ==
        doc({"x", "y", "b", "c", "d", "E"}));
}

TEST_CASE("property: round trip, minimality, symmetry, neutrality") {
  std::mt19937_64 rng(20260415);
  for (int trial = 0; trial < 1500; ++trial) {
    const std::size_t max_lines = trial % 3 == 0 ? 8 : 60;
    const Document base = coco::testing::random_document(rng, max_lines);
    const Document ours_doc =
        coco::testing::random_edit(rng, base, max_lines);
    const Document theirs_doc =
        coco::testing::random_edit(rng, base, max_lines);
    const Changeset ours = diff(base, ours_doc);
    const Changeset theirs = diff(base, theirs_doc);

    REQUIRE(apply(base, ours) == ours_doc);
    REQUIRE(apply(base, theirs) == theirs_doc);
    if (max_lines <= 8) {
      REQUIRE(ours.edit_size() ==
              brute_force_edit_size(base.lines, ours_doc.lines));
    }

    const MergeOutcome xy = merge3(base, ours, theirs);
    const MergeOutcome yx = merge3(base, theirs, ours);
    REQUIRE(xy.index() == yx.index());
    if (std::holds_alternative<Merged>(xy)) {
      REQUIRE(std::get<Merged>(xy) == std::get<Merged>(yx));
      const auto seq = coco::testing::apply_back_to_front(
          coco::testing::apply_back_to_front(base.lines, ours.hunks),
          coco::testing::shift_past(ours.hunks, theirs.hunks));
      REQUIRE(std::get<Merged>(xy).result.lines == seq);
    } else {
      REQUIRE(region_set(xy) == region_set(yx));
    }

    const MergeOutcome neutral = merge3(base, Changeset{}, ours);
    REQUIRE(std::holds_alternative<Merged>(neutral));
    REQUIRE(std::get<Merged>(neutral).result == ours_doc);
  }
}
