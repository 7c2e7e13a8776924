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
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "coco/merge/changeset.hpp"
#include "coco/merge/document.hpp"
#include "coco/store/revision.hpp"

namespace coco::store {

// Server-side stamp for a commit. Clients commit nothing themselves; their
// replicas only receive stamped revisions.
struct CommitStamp {
  std::optional<std::uint64_t> server_seq;
  std::int64_t server_time_ms = 0;
};

// The history of one shared file: a content-addressed DAG plus a head.
//
// Every client holds a full copy, so any replica can serve any other (there
// is no designated master). Only the server assigns server_seq, and the
// committed revisions ordered by it are the file's history.
//
// Revisions on a recorded conflict branch are committed but not reachable
// from head until someone resolves them.
//
// One writer at a time; concurrent readers are fine.
class RevisionGraph {
 public:
  bool contains(const RevisionId& id) const;
  const Revision& at(const RevisionId& id) const;  // throws UnknownRevision
  std::size_t size() const { return revisions_.size(); }
  bool empty() const { return revisions_.empty(); }

  const std::optional<RevisionId>& head() const { return head_; }
  void set_head(std::optional<RevisionId> id);  // throws UnknownRevision

  // Creates a revision on top of `parents` (root when empty). `cs` must apply
  // to materialize(parents[0]), or to the empty document for a root.
  // Recommitting identical content returns the existing id; a stamp then
  // only fills a server_seq that was still unset.
  // Throws UnknownRevision, PatchRangeError.
  RevisionId commit(const std::vector<RevisionId>& parents,
                    const merge::Changeset& cs, const std::string& author,
                    const std::string& device, const CommitStamp& stamp = {});

  // Adds a revision received from elsewhere. The id must hash from the
  // content and every parent must already be present. Returns false when
  // the revision was already known.
  // Throws IntegrityError, UnknownRevision, PatchRangeError.
  bool insert(const Revision& rev);

  // Replays changesets along the first-parent chain.
  merge::Document materialize(const RevisionId& id) const;

  // Lowest common ancestor; among several, the one with the greatest
  // server_seq, then the smallest id. Throws NoCommonAncestor.
  RevisionId common_ancestor(const RevisionId& a, const RevisionId& b) const;

  // `id` and everything reachable from it.
  std::set<RevisionId> ancestors(const RevisionId& id) const;
  bool is_ancestor(const RevisionId& ancestor, const RevisionId& of) const;

  // Committed revisions, oldest server_seq first.
  std::vector<Revision> log() const;

  // One past the largest server_seq present, or 0.
  std::uint64_t next_seq() const;

  const std::map<RevisionId, Revision>& revisions() const {
    return revisions_;
  }

  bool operator==(const RevisionGraph&) const = default;

 private:
  void check_parents(const Revision& rev) const;

  std::map<RevisionId, Revision> revisions_;
  std::optional<RevisionId> head_;
};

}  // namespace coco::store
