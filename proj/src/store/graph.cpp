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


#include "coco/store/graph.hpp"

#include <algorithm>
#include <deque>

#include "coco/error.hpp"
#include "coco/merge/changeset.hpp"

namespace coco::store {

bool RevisionGraph::contains(const RevisionId& id) const {
  return revisions_.count(id) != 0;
}

const Revision& RevisionGraph::at(const RevisionId& id) const {
  auto it = revisions_.find(id);
  if (it == revisions_.end()) {
    throw UnknownRevision("unknown revision " + id.hex());
  }
  return it->second;
}

void RevisionGraph::set_head(std::optional<RevisionId> id) {
  if (id) at(*id);
  head_ = std::move(id);
}

void RevisionGraph::check_parents(const Revision& rev) const {
  if (rev.parents.size() > 2) {
    throw IntegrityError("revision " + rev.id.short_hex() +
                         " has more than two parents");
  }
  if (rev.parents.size() == 2 && rev.parents[0] == rev.parents[1]) {
    throw IntegrityError("revision " + rev.id.short_hex() +
                         " lists the same parent twice");
  }
  for (const auto& p : rev.parents) {
    if (p == rev.id) {
      throw IntegrityError("revision " + rev.id.short_hex() +
                           " would be its own ancestor");
    }
    at(p);
  }
  const merge::Document base = rev.parents.empty()
                                   ? merge::Document{}
                                   : materialize(rev.parents.front());
  merge::validate(rev.changeset, base.lines.size());
}

RevisionId RevisionGraph::commit(const std::vector<RevisionId>& parents,
                                 const merge::Changeset& cs,
                                 const std::string& author,
                                 const std::string& device,
                                 const CommitStamp& stamp) {
  Revision rev;
  rev.parents = parents;
  rev.changeset = cs;
  rev.author = author;
  rev.device = device;
  rev.id = compute_id(rev.parents, rev.changeset, rev.author, rev.device);
  rev.server_seq = stamp.server_seq;
  rev.server_time_ms = stamp.server_time_ms;
  insert(rev);
  return rev.id;
}

bool RevisionGraph::insert(const Revision& rev) {
  if (compute_id(rev.parents, rev.changeset, rev.author, rev.device) !=
      rev.id) {
    throw IntegrityError("revision " + rev.id.short_hex() +
                         ": id does not match content");
  }
  if (auto it = revisions_.find(rev.id); it != revisions_.end()) {
    Revision& existing = it->second;
    if (!existing.server_seq && rev.server_seq) {
      existing.server_seq = rev.server_seq;
      existing.server_time_ms = rev.server_time_ms;
    }
    return false;
  }
  check_parents(rev);
  revisions_.emplace(rev.id, rev);
  return true;
}

merge::Document RevisionGraph::materialize(const RevisionId& id) const {
  std::vector<const Revision*> chain;
  const Revision* cursor = &at(id);
  while (true) {
    chain.push_back(cursor);
    if (cursor->parents.empty()) break;
    cursor = &at(cursor->parents.front());
  }
  merge::Document doc;
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    doc = merge::apply(doc, (*it)->changeset);
  }
  return doc;
}

std::set<RevisionId> RevisionGraph::ancestors(const RevisionId& id) const {
  std::set<RevisionId> seen;
  std::deque<RevisionId> pending{id};
  at(id);
  while (!pending.empty()) {
    RevisionId next = std::move(pending.front());
    pending.pop_front();
    if (!seen.insert(next).second) continue;
    for (const auto& p : at(next).parents) pending.push_back(p);
  }
  return seen;
}

bool RevisionGraph::is_ancestor(const RevisionId& ancestor,
                                const RevisionId& of) const {
  return ancestors(of).count(ancestor) != 0;
}

RevisionId RevisionGraph::common_ancestor(const RevisionId& a,
                                          const RevisionId& b) const {
  if (a == b) {
    at(a);
    return a;
  }
  const std::set<RevisionId> from_a = ancestors(a);
  const std::set<RevisionId> from_b = ancestors(b);
  std::vector<RevisionId> common;
  std::set_intersection(from_a.begin(), from_a.end(), from_b.begin(),
                        from_b.end(), std::back_inserter(common));
  if (common.empty()) {
    throw NoCommonAncestor("revisions " + a.short_hex() + " and " +
                           b.short_hex() + " share no history");
  }

  // Drop every common ancestor that is a proper ancestor of another one.
  std::set<RevisionId> shadowed;
  for (const auto& c : common) {
    for (const auto& p : at(c).parents) {
      for (const auto& up : ancestors(p)) shadowed.insert(up);
    }
  }
  const RevisionId* best = nullptr;
  auto seq_of = [this](const RevisionId& id) -> long long {
    const auto& seq = at(id).server_seq;
    return seq ? static_cast<long long>(*seq) : -1;
  };
  for (const auto& c : common) {
    if (shadowed.count(c)) continue;
    if (best == nullptr || seq_of(c) > seq_of(*best)) best = &c;
    // `common` is sorted, so equal seqs keep the smaller id.
  }
  return *best;
}

std::vector<Revision> RevisionGraph::log() const {
  std::vector<Revision> out;
  for (const auto& [id, rev] : revisions_) {
    if (rev.server_seq) out.push_back(rev);
  }
  std::sort(out.begin(), out.end(), [](const Revision& x, const Revision& y) {
    if (*x.server_seq != *y.server_seq) return *x.server_seq < *y.server_seq;
    return x.id < y.id;
  });
  return out;
}

std::uint64_t RevisionGraph::next_seq() const {
  std::uint64_t next = 0;
  for (const auto& [id, rev] : revisions_) {
    if (rev.server_seq) next = std::max(next, *rev.server_seq + 1);
  }
  return next;
}

}  // namespace coco::store
