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


#include "coco/server/sync_service.hpp"

#include <variant>

#include "coco/error.hpp"
#include "coco/merge/diff.hpp"

namespace coco::server {

struct SyncService::FileState {
  FileState(std::string file_name, const Clock& clock,
            const ServerOptions& options)
      : name(std::move(file_name)),
        lock(clock, options.lease, options.backoff) {}

  const std::string name;
  FileLock lock;

  mutable std::shared_mutex mu;  // everything below
  store::RevisionGraph graph;
  merge::Document head_doc;
  std::uint64_t next_seq = 0;
  std::uint64_t conflicts = 0;
  std::vector<CommitRecord> commit_order;
};

std::string_view to_string(CheckInResult::Kind kind) {
  switch (kind) {
    case CheckInResult::Kind::kFastForward: return "FastForward";
    case CheckInResult::Kind::kAutoMerged: return "AutoMerged";
    case CheckInResult::Kind::kConflictRecorded: return "ConflictRecorded";
  }
  return "";
}

CheckInResult::Kind check_in_kind_from_string(std::string_view text) {
  if (text == "FastForward") return CheckInResult::Kind::kFastForward;
  if (text == "AutoMerged") return CheckInResult::Kind::kAutoMerged;
  if (text == "ConflictRecorded") return CheckInResult::Kind::kConflictRecorded;
  throw ProtocolError("unknown check-in result '" + std::string(text) + "'");
}

SyncService::SyncService(ServerOptions options)
    : options_(std::move(options)),
      clock_(options_.clock ? *options_.clock : SteadyClock::instance()) {
  if (options_.data_dir) {
    storage_.emplace(*options_.data_dir);
    for (const std::string& name : storage_->files()) {
      auto fs = std::make_unique<FileState>(name, clock_, options_);
      fs->graph = storage_->load(name);
      fs->next_seq = fs->graph.next_seq();
      if (fs->graph.head()) fs->head_doc = fs->graph.materialize(*fs->graph.head());
      files_.emplace(name, std::move(fs));
    }
  }
}

SyncService::~SyncService() { shutdown(); }

void SyncService::shutdown() { shutting_down_ = true; }

SyncService::FileState& SyncService::file_state(const std::string& name) {
  validate_file_name(name);
  std::lock_guard<std::mutex> lock(files_mu_);
  auto it = files_.find(name);
  if (it != files_.end()) return *it->second;
  if (files_.size() >= options_.max_files) {
    throw ProtocolError("file table full");
  }
  auto fs = std::make_unique<FileState>(name, clock_, options_);
  FileState& ref = *fs;
  files_.emplace(name, std::move(fs));
  return ref;
}

const SyncService::FileState* SyncService::find_file(
    const std::string& name) const {
  std::lock_guard<std::mutex> lock(files_mu_);
  auto it = files_.find(name);
  return it == files_.end() ? nullptr : it->second.get();
}

namespace {

void check_principal(const Principal& who) {
  if (!who.valid()) {
    throw ProtocolError("principal needs a non-empty user and device");
  }
}

}  // namespace

LockGrant SyncService::checkout(const std::string& file, const Principal& who,
                                LockMode mode) {
  check_principal(who);
  FileState& fs = file_state(file);
  const auto deadline = clock_.now() + options_.max_wait;
  auto give_up = [&] {
    return shutting_down_.load() || clock_.now() >= deadline;
  };
  const auto ticket = fs.lock.acquire(who, mode, give_up);
  if (!ticket) {
    throw LeaseDenied(who.to_string() + " gave up waiting for " + file);
  }
  std::shared_lock<std::shared_mutex> read(fs.mu);
  return LockGrant{*ticket, fs.graph.head()};
}

void SyncService::release(const std::string& file, const Principal& who) {
  check_principal(who);
  file_state(file).lock.release(who);
}

void SyncService::renew(const std::string& file, const Principal& who) {
  check_principal(who);
  file_state(file).lock.renew(who);
}

CheckInResult SyncService::checkin(const CheckInRequest& request) {
  check_principal(request.principal);
  FileState& fs = file_state(request.file);

  // A Manual-mode client may check in without having checked out. Its
  // check-in still queues through the gate like everyone else's.
  bool internal_ticket = false;
  std::uint64_t ticket = 0;
  if (auto held = fs.lock.holder();
      held && held->who == request.principal &&
      (!request.ticket || held->ticket == *request.ticket)) {
    ticket = held->ticket;
  } else if (request.mode == LockMode::kManual && !request.ticket) {
    const auto granted = fs.lock.acquire(request.principal, LockMode::kManual,
                                         [this] { return shutting_down_.load(); });
    if (!granted) throw LeaseDenied("service is shutting down");
    ticket = *granted;
    internal_ticket = true;
  } else {
    throw NotLockHolder(request.principal.to_string() +
                        " does not hold the lock on " + request.file);
  }

  struct ReleaseOnExit {
    FileLock& lock;
    const Principal& who;
    bool armed;
    ~ReleaseOnExit() {
      if (!armed) return;
      try {
        lock.release(who);
      } catch (const NotLockHolder&) {
        // Lease already expired.
      }
    }
  } release_guard{fs.lock, request.principal, internal_ticket};

  std::unique_lock<std::shared_mutex> write(fs.mu);
  // Checked again under the history lock: a holder whose lease lapsed after
  // the first check must not commit behind its successor's back.
  if (!fs.lock.holds(request.principal, ticket)) {
    throw NotLockHolder(request.principal.to_string() +
                        " lost the lock on " + request.file);
  }
  return process(fs, request, ticket);
}

store::RevisionId SyncService::stamp_commit(
    FileState& fs, const std::vector<store::RevisionId>& parents,
    const merge::Changeset& cs, const Principal& who) {
  const store::RevisionId id =
      store::compute_id(parents, cs, who.user, who.device);
  if (fs.graph.contains(id)) return id;  // resubmission; already has a seq
  fs.graph.commit(parents, cs, who.user, who.device,
                  store::CommitStamp{fs.next_seq, clock_.wall_ms()});
  ++fs.next_seq;
  if (storage_) storage_->append(fs.name, fs.graph.at(id));
  return id;
}

CheckInResult SyncService::process(FileState& fs, const CheckInRequest& req,
                                   std::uint64_t ticket) {
  const std::optional<store::RevisionId> head = fs.graph.head();
  if (req.base && !fs.graph.contains(*req.base)) {
    throw UnknownRevision("unknown base revision " + req.base->hex());
  }
  if (req.merge_parent && !fs.graph.contains(*req.merge_parent)) {
    throw UnknownRevision("unknown merge parent " + req.merge_parent->hex());
  }

  const merge::Document base_doc =
      req.base == head ? fs.head_doc
                       : (req.base ? fs.graph.materialize(*req.base)
                                   : merge::Document{});
  merge::validate(req.changeset, base_doc.lines.size());

  std::vector<store::RevisionId> parents;
  if (req.base) parents.push_back(*req.base);
  if (req.merge_parent && req.merge_parent != req.base) {
    if (parents.empty()) {
      throw PatchRangeError("a merge check-in needs a base revision");
    }
    parents.push_back(*req.merge_parent);
  }

  const std::uint64_t first_seq = fs.next_seq;
  CheckInResult result;
  result.revision = stamp_commit(fs, parents, req.changeset, req.principal);

  if (req.base == head) {
    result.kind = CheckInResult::Kind::kFastForward;
    if (result.revision != head) {
      fs.head_doc = merge::apply(base_doc, req.changeset);
      fs.graph.set_head(result.revision);
    }
  } else {
    // Stale base: merge the submitted change into head through the common
    // ancestor.
    merge::Document ancestor_doc;
    if (req.base && head) {
      try {
        ancestor_doc = fs.graph.materialize(
            fs.graph.common_ancestor(*req.base, *head));
      } catch (const NoCommonAncestor&) {
        // Unrelated histories merge against the empty document.
      }
    }
    const merge::Document ours = merge::apply(base_doc, req.changeset);
    const merge::MergeOutcome outcome =
        merge::merge3(ancestor_doc, merge::diff(ancestor_doc, ours),
                      merge::diff(ancestor_doc, fs.head_doc));
    if (const auto* merged = std::get_if<merge::Merged>(&outcome)) {
      result.kind = CheckInResult::Kind::kAutoMerged;
      std::vector<store::RevisionId> merge_parents;
      if (head) merge_parents.push_back(*head);
      merge_parents.push_back(result.revision);
      result.merge = stamp_commit(fs, merge_parents,
                                  merge::diff(fs.head_doc, merged->result),
                                  req.principal);
      fs.head_doc = merged->result;
      fs.graph.set_head(result.merge);
    } else {
      result.kind = CheckInResult::Kind::kConflictRecorded;
      result.regions = std::get<merge::Conflict>(outcome).regions;
      ++fs.conflicts;
    }
  }
  result.head = fs.graph.head();
  if (storage_) storage_->write_head(fs.name, result.head);
  if (fs.next_seq != first_seq) {
    fs.commit_order.push_back(CommitRecord{ticket, first_seq, req.principal});
  }
  return result;
}

PullResult SyncService::pull(const std::string& file,
                             const std::set<store::RevisionId>& have) const {
  const FileState* fs = find_file(file);
  if (fs == nullptr) return {};
  std::shared_lock<std::shared_mutex> read(fs->mu);
  PullResult out;
  out.head = fs->graph.head();
  for (store::Revision& rev : fs->graph.log()) {
    if (!have.count(rev.id)) out.revisions.push_back(std::move(rev));
  }
  return out;
}

std::vector<store::Revision> SyncService::history(
    const std::string& file) const {
  const FileState* fs = find_file(file);
  if (fs == nullptr) return {};
  std::shared_lock<std::shared_mutex> read(fs->mu);
  return fs->graph.log();
}

std::optional<store::RevisionId> SyncService::put_file(const std::string& file,
                                                       std::string_view bytes,
                                                       const Principal& who) {
  const merge::Document doc = merge::normalize(bytes);
  const LockGrant grant = checkout(file, who, LockMode::kAutomatic);
  FileState& fs = file_state(file);

  struct ReleaseOnExit {
    SyncService& service;
    const std::string& file;
    const Principal& who;
    ~ReleaseOnExit() {
      try {
        service.release(file, who);
      } catch (const NotLockHolder&) {
      }
    }
  } release_guard{*this, file, who};

  std::unique_lock<std::shared_mutex> write(fs.mu);
  if (!fs.lock.holds(who, grant.ticket)) {
    throw NotLockHolder(who.to_string() + " lost the lock on " + file);
  }
  CheckInRequest req;
  req.file = file;
  req.principal = who;
  req.base = fs.graph.head();
  req.ticket = grant.ticket;
  req.changeset = merge::diff(fs.head_doc, doc);
  if (req.changeset.empty() && req.base) return req.base;
  return process(fs, req, grant.ticket).head;
}

std::string SyncService::get_file(const std::string& file) const {
  const FileState* fs = find_file(file);
  if (fs == nullptr) throw NotFound("no such file '" + file + "'");
  std::shared_lock<std::shared_mutex> read(fs->mu);
  if (!fs->graph.head()) throw NotFound("file '" + file + "' is empty");
  return merge::render(fs->head_doc);
}

FileStats SyncService::stats(const std::string& file) const {
  const FileState* fs = find_file(file);
  if (fs == nullptr) return {};
  FileStats out;
  {
    std::shared_lock<std::shared_mutex> read(fs->mu);
    out.conflicts = fs->conflicts;
    out.commits = fs->graph.log().size();
    out.head = fs->graph.head();
    out.commit_order = fs->commit_order;
  }
  out.lock_events = fs->lock.events();
  return out;
}

}  // namespace coco::server
