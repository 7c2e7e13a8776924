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


#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "coco/error.hpp"
#include "coco/merge/diff.hpp"
#include "coco/merge/merge.hpp"
#include "coco/store/graph.hpp"
#include "coco/store/persist.hpp"
#include "coco/store/revision.hpp"
#include "coco/store/sha256.hpp"
#include "doctest.h"
#include "support/oracles.hpp"
#include "support/temp_dir.hpp"

using namespace coco;
using namespace coco::store;
using merge::Changeset;
using merge::Document;
using merge::Hunk;
using merge::make_document;

namespace {

Changeset insert_at(std::size_t at, std::string line) {
  return Changeset{{Hunk{at, 0, {std::move(line)}}}, {}};
}

CommitStamp seq(std::uint64_t n) { return CommitStamp{n, 1000 + static_cast<std::int64_t>(n)}; }

}  // namespace

TEST_CASE("sha256 matches the published test vector") {
  CHECK(sha256_hex("abc") ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(sha256_hex("") ==
        "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST_CASE("commit creates a root and is content addressed") {
  RevisionGraph g;
  const Changeset cs = merge::diff(Document{}, make_document({"a"}));
  const RevisionId root = g.commit({}, cs, "u", "d");
  CHECK(g.materialize(root) == make_document({"a"}));
  CHECK(g.at(root).parents.empty());
  CHECK(g.commit({}, cs, "u", "d") == root);
  CHECK(g.size() == 1);

  const RevisionId next = g.commit({root}, Changeset{{Hunk{0, 1, {"b"}}}, {}},
                                   "u", "d");
  CHECK(g.materialize(next) == make_document({"b"}));
}

TEST_CASE("any content field change changes the id") {
  const RevisionId p = RevisionId::from_hex(std::string(64, 'a'));
  const Changeset cs = insert_at(0, "x");
  const RevisionId base = compute_id({p}, cs, "u", "d");
  CHECK(compute_id({p}, cs, "u", "d") == base);
  CHECK(compute_id({}, cs, "u", "d") != base);
  CHECK(compute_id({p}, insert_at(0, "y"), "u", "d") != base);
  CHECK(compute_id({p}, insert_at(1, "x"), "u", "d") != base);
  CHECK(compute_id({p}, cs, "v", "d") != base);
  CHECK(compute_id({p}, cs, "u", "e") != base);
  Changeset eol = cs;
  eol.final_newline = false;
  CHECK(compute_id({p}, eol, "u", "d") != base);
  // Field boundaries are length-prefixed, so shifting bytes between
  // neighbouring fields is visible.
  CHECK(compute_id({p}, cs, "ud", "") != compute_id({p}, cs, "u", "d"));
}

TEST_CASE("commit rejects unknown parents, bad ranges and self reference") {
  RevisionGraph g;
  const RevisionId ghost = RevisionId::from_hex(std::string(64, 'f'));
  CHECK_THROWS_AS(g.commit({ghost}, insert_at(0, "x"), "u", "d"),
                  UnknownRevision);
  const RevisionId root = g.commit({}, insert_at(0, "a"), "u", "d");
  CHECK_THROWS_AS(g.commit({root}, Changeset{{Hunk{4, 1, {"z"}}}, {}}, "u", "d"),
                  PatchRangeError);
  CHECK_THROWS_AS(g.materialize(ghost), UnknownRevision);

  Revision forged;
  forged.changeset = insert_at(0, "x");
  forged.author = "u";
  forged.device = "d";
  forged.id = compute_id({}, forged.changeset, "u", "d");
  forged.parents = {forged.id};  // id no longer matches content
  CHECK_THROWS_AS(g.insert(forged), IntegrityError);
}

TEST_CASE("merge revision materializes to the merge3 result") {
  RevisionGraph g;
  const RevisionId r0 =
      g.commit({}, merge::diff(Document{}, make_document({"a", "b", "c"})),
               "u", "d", seq(0));
  const Document base = g.materialize(r0);
  const RevisionId left = g.commit({r0}, Changeset{{Hunk{0, 1, {"A"}}}, {}},
                                   "alice", "phone", seq(1));
  const RevisionId right = g.commit({r0}, Changeset{{Hunk{2, 1, {"C"}}}, {}},
                                    "bob", "laptop", seq(2));
  auto merged = merge::merge3(base, g.at(left).changeset, g.at(right).changeset);
  REQUIRE(std::holds_alternative<merge::Merged>(merged));
  const Document want = std::get<merge::Merged>(merged).result;
  const RevisionId m =
      g.commit({left, right}, merge::diff(g.materialize(left), want), "bob",
               "laptop", seq(3));
  CHECK(g.at(m).parents.size() == 2);
  CHECK(g.materialize(m) == want);
  CHECK(g.common_ancestor(left, right) == r0);
}

TEST_CASE("property: merge revisions on random two-branch graphs") {
  std::mt19937_64 rng(99);
  int merged_cases = 0;
  for (int trial = 0; trial < 300; ++trial) {
    RevisionGraph g;
    const Document base = testing::random_document(rng, 30);
    const RevisionId root = g.commit({}, merge::diff(Document{}, base), "r",
                                     "d", seq(0));
    // Each branch makes a couple of commits.
    RevisionId tips[2] = {root, root};
    std::uint64_t n = 1;
    for (int branch = 0; branch < 2; ++branch) {
      const int steps = 1 + static_cast<int>(rng() % 3);
      for (int s = 0; s < steps; ++s) {
        const Document from = g.materialize(tips[branch]);
        const Document to = testing::random_edit(rng, from, 40);
        tips[branch] = g.commit({tips[branch]}, merge::diff(from, to),
                                branch == 0 ? "a" : "b", "d", seq(n++));
      }
    }
    const RevisionId anc = g.common_ancestor(tips[0], tips[1]);
    CHECK(anc == root);
    const Document a = g.materialize(anc);
    auto outcome = merge::merge3(a, merge::diff(a, g.materialize(tips[0])),
                                 merge::diff(a, g.materialize(tips[1])));
    if (!std::holds_alternative<merge::Merged>(outcome)) continue;
    ++merged_cases;
    const Document want = std::get<merge::Merged>(outcome).result;
    const RevisionId m = g.commit(
        {tips[0], tips[1]}, merge::diff(g.materialize(tips[0]), want), "m",
        "d", seq(n++));
    REQUIRE(g.materialize(m) == want);
  }
  CHECK(merged_cases > 20);
}

TEST_CASE("common_ancestor examples") {
  RevisionGraph g;
  const RevisionId root = g.commit({}, insert_at(0, "0"), "u", "d", seq(0));
  const RevisionId r1 = g.commit({root}, insert_at(0, "1"), "u", "d", seq(1));
  const RevisionId r2 = g.commit({r1}, insert_at(0, "2"), "u", "d", seq(2));
  CHECK(g.common_ancestor(r2, r2) == r2);
  CHECK(g.common_ancestor(r1, r2) == r1);
  CHECK(g.common_ancestor(r2, r1) == r1);

  const RevisionId a = g.commit({r1}, insert_at(0, "a"), "u", "d", seq(3));
  const RevisionId b = g.commit({r1}, insert_at(1, "b"), "v", "d", seq(4));
  CHECK(g.common_ancestor(a, b) == r1);

  RevisionGraph other = g;
  const RevisionId lone = other.commit({}, insert_at(0, "z"), "x", "d", seq(5));
  CHECK_THROWS_AS(other.common_ancestor(lone, a), NoCommonAncestor);
}

TEST_CASE("common_ancestor agrees with ancestor-set intersection") {
  std::mt19937_64 rng(4242);
  for (int trial = 0; trial < 200; ++trial) {
    RevisionGraph g;
    std::vector<RevisionId> nodes;
    std::map<RevisionId, std::vector<RevisionId>> parents_of;
    std::map<RevisionId, std::uint64_t> seq_of;
    const int count = 2 + static_cast<int>(rng() % 19);
    for (int i = 0; i < count; ++i) {
      std::vector<RevisionId> parents;
      if (!nodes.empty() && rng() % 6 != 0) {
        parents.push_back(nodes[rng() % nodes.size()]);
        if (rng() % 3 == 0) {
          const RevisionId second = nodes[rng() % nodes.size()];
          if (second != parents[0]) parents.push_back(second);
        }
      }
      const RevisionId id = g.commit(parents, insert_at(0, "n"),
                                     "u" + std::to_string(i), "d", seq(i));
      nodes.push_back(id);
      parents_of[id] = parents;
      seq_of[id] = static_cast<std::uint64_t>(i);
    }

    std::function<void(const RevisionId&, std::set<RevisionId>&)> closure =
        [&](const RevisionId& id, std::set<RevisionId>& out) {
          if (!out.insert(id).second) return;
          for (const auto& p : parents_of[id]) closure(p, out);
        };
    for (int q = 0; q < 10; ++q) {
      const RevisionId x = nodes[rng() % nodes.size()];
      const RevisionId y = nodes[rng() % nodes.size()];
      std::set<RevisionId> ax, ay;
      closure(x, ax);
      closure(y, ay);
      std::vector<RevisionId> common;
      for (const auto& c : ax) {
        if (ay.count(c)) common.push_back(c);
      }
      if (common.empty()) {
        CHECK_THROWS_AS(g.common_ancestor(x, y), NoCommonAncestor);
        continue;
      }
      std::vector<RevisionId> lowest;
      for (const auto& c : common) {
        bool below_other = false;
        for (const auto& other : common) {
          if (other == c) continue;
          std::set<RevisionId> up;
          closure(other, up);
          if (up.count(c)) below_other = true;
        }
        if (!below_other) lowest.push_back(c);
      }
      std::sort(lowest.begin(), lowest.end(),
                [&](const RevisionId& l, const RevisionId& r) {
                  if (seq_of[l] != seq_of[r]) return seq_of[l] > seq_of[r];
                  return l < r;
                });
      CHECK(g.common_ancestor(x, y) == lowest.front());
    }
  }
}

TEST_CASE("log orders committed revisions by server_seq") {
  RevisionGraph g;
  CHECK(g.log().empty());
  RevisionId tip = g.commit({}, insert_at(0, "0"), "alice", "d", seq(0));
  for (std::uint64_t k = 1; k < 6; ++k) {
    tip = g.commit({tip}, insert_at(0, std::to_string(k)),
                   k % 2 ? "bob" : "alice", "d", seq(k));
  }
  // An uncommitted revision is not history yet.
  g.commit({tip}, insert_at(0, "draft"), "carol", "d");
  const auto log = g.log();
  REQUIRE(log.size() == 6);
  for (std::uint64_t k = 0; k < 6; ++k) {
    CHECK(*log[k].server_seq == k);
    CHECK(log[k].author == (k % 2 ? "bob" : "alice"));
  }
  CHECK(g.next_seq() == 6);
}

TEST_CASE("insert fills a missing server_seq on an existing revision") {
  RevisionGraph g;
  const RevisionId r = g.commit({}, insert_at(0, "x"), "u", "d");
  CHECK_FALSE(g.at(r).committed());
  Revision stamped = g.at(r);
  stamped.server_seq = 7;
  CHECK_FALSE(g.insert(stamped));
  CHECK(*g.at(r).server_seq == 7);
}

TEST_CASE("save and load round trip") {
  testing::TempDir tmp;
  RevisionGraph empty;
  save(empty, tmp.path() / "empty");
  CHECK(load(tmp.path() / "empty") == empty);
  CHECK(load(tmp.path() / "missing") == empty);

  RevisionGraph g;
  RevisionId tip = g.commit({}, Changeset{{Hunk{0, 0, {"a", "b"}}}, false},
                            "alice", "phone", seq(0));
  for (std::uint64_t k = 1; k < 10; ++k) {
    Changeset cs = insert_at(1, "line " + std::to_string(k));
    if (k == 5) cs.final_newline = true;
    tip = g.commit({tip}, cs, k % 3 ? "alice" : "bob", "dev", seq(k));
  }
  g.set_head(tip);
  save(g, tmp.path() / "ten");
  const RevisionGraph back = load(tmp.path() / "ten");
  CHECK(back == g);
  CHECK(back.head() == g.head());
  CHECK(back.materialize(tip) == g.materialize(tip));

  // Saving a smaller graph over it drops the extra records.
  save(empty, tmp.path() / "ten");
  CHECK(load(tmp.path() / "ten") == empty);
}

TEST_CASE("tampered revision files fail the integrity check") {
  testing::TempDir tmp;
  RevisionGraph g;
  const RevisionId r =
      g.commit({}, insert_at(0, "hello"), "alice", "phone", seq(0));
  g.set_head(r);
  save(g, tmp.path());
  const auto file = tmp.path() / "revisions" / (r.hex() + ".rev");
  const std::string original = read_file(file);

  SUBCASE("content byte flipped") {
    std::string bad = original;
    bad.replace(bad.find("hello"), 5, "jello");
    write_file_atomic(file, bad);
    CHECK_THROWS_AS(load(tmp.path()), IntegrityError);
  }
  SUBCASE("server_seq rewritten") {
    std::string bad = original;
    const std::string stamp = "1 0\n4 1000\n";
    REQUIRE(bad.find(stamp) != std::string::npos);
    bad.replace(bad.find(stamp), stamp.size(), "1 9\n4 1000\n");
    write_file_atomic(file, bad);
    CHECK_THROWS_AS(load(tmp.path()), IntegrityError);
  }
  SUBCASE("truncated") {
    write_file_atomic(file, original.substr(0, original.size() / 2));
    CHECK_THROWS_AS(load(tmp.path()), IntegrityError);
  }
  SUBCASE("HEAD points nowhere") {
    write_file_atomic(tmp.path() / "HEAD", std::string(64, 'b') + "\n");
    CHECK_THROWS_AS(load(tmp.path()), IntegrityError);
  }
}

TEST_CASE("encode_revision round trips through decode") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const Document from = testing::random_document(rng, 20);
    const Document to = testing::random_edit(rng, from, 25);
    Revision rev;
    rev.changeset = merge::diff(from, to);
    rev.author = "user " + std::to_string(trial);
    rev.device = trial % 2 ? "" : "dev\nice";
    rev.id = compute_id({}, rev.changeset, rev.author, rev.device);
    if (trial % 3) rev.server_seq = static_cast<std::uint64_t>(trial);
    rev.server_time_ms = -trial;
    REQUIRE(decode_revision(encode_revision(rev)) == rev);
  }
}
