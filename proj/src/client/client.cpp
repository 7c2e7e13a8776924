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


#include "coco/client/client.hpp"

#include <algorithm>
#include <ctime>
#include <iomanip>
#include <sstream>

#include "coco/error.hpp"
#include "coco/merge/diff.hpp"

namespace coco::client {

using net::Json;
using store::RevisionId;

std::string_view to_string(CheckInOutcome::Kind kind) {
  switch (kind) {
    case CheckInOutcome::Kind::kNoChange:
      return "NoChange";
    case CheckInOutcome::Kind::kFastForward:
      return "FastForward";
    case CheckInOutcome::Kind::kAutoMerged:
      return "AutoMerged";
    case CheckInOutcome::Kind::kConflictRecorded:
      return "ConflictRecorded";
  }
  return "?";
}

namespace {

CheckInOutcome::Kind kind_from_string(const std::string& text) {
  if (text == "FastForward") return CheckInOutcome::Kind::kFastForward;
  if (text == "AutoMerged") return CheckInOutcome::Kind::kAutoMerged;
  if (text == "ConflictRecorded") return CheckInOutcome::Kind::kConflictRecorded;
  throw ProtocolError("unknown check-in result '" + text + "'");
}

std::string format_time(std::int64_t ms) {
  const std::time_t secs = static_cast<std::time_t>(ms / 1000);
  std::tm tm{};
  gmtime_r(&secs, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%S") << '.' << std::setw(3)
      << std::setfill('0') << (ms % 1000 + 1000) % 1000 << 'Z';
  return out.str();
}

}  // namespace

Client::Client(ClientConfig config, net::Transport& server, Workspace& ws)
    : config_(std::move(config)), server_(server), ws_(ws) {
  config_.validate();
}

Json Client::request(std::string_view op) const {
  return Json{{"op", op},
              {"file", ws_.file()},
              {"user", config_.user},
              {"device", config_.device},
              {"mode", to_string(config_.mode)}};
}

Json Client::pull_request() const {
  Json have = Json::array();
  for (const auto& [id, rev] : ws_.replica.revisions()) have.push_back(id.hex());
  return Json{{"op", "pull"}, {"file", ws_.file()}, {"have", std::move(have)}};
}

std::size_t Client::absorb(const Json& reply) {
  if (net::require_string(reply, "file") != ws_.file()) {
    throw ProtocolError("reply is for file '" + reply["file"].get<std::string>() +
                        "', not '" + ws_.file() + "'");
  }
  const Json& list = reply.at("revisions");
  if (!list.is_array()) throw ProtocolError("'revisions' must be an array");
  std::vector<store::Revision> revisions;
  for (const Json& r : list) revisions.push_back(net::revision_from_json(r));
  // Parents always carry a smaller seq than their children.
  std::stable_sort(revisions.begin(), revisions.end(),
                   [](const store::Revision& a, const store::Revision& b) {
                     return a.server_seq.value_or(UINT64_MAX) <
                            b.server_seq.value_or(UINT64_MAX);
                   });
  std::size_t added = 0;
  for (const auto& rev : revisions) {
    if (ws_.replica.insert(rev)) ++added;
  }

  // Every new head gets a fresh seq, so the newer head is the larger one.
  const auto remote = net::optional_id(reply, "head");
  if (remote && ws_.replica.contains(*remote)) {
    const auto& local = ws_.replica.head();
    if (!local || ws_.replica.at(*remote).server_seq.value_or(0) >
                      ws_.replica.at(*local).server_seq.value_or(0)) {
      ws_.replica.set_head(remote);
    }
  }
  return added;
}

bool Client::working_dirty() const {
  try {
    return ws_.dirty();
  } catch (const EncodingError&) {
    return true;
  }
}

void Client::follow_head() {
  const auto& head = ws_.replica.head();
  if (!head || head == ws_.base) return;
  if (ws_.conflict) {
    warnings_.push_back("conflict pending; working copy not updated to " +
                        head->short_hex());
    return;
  }
  if (working_dirty()) {
    warnings_.push_back("working copy has local edits; not updated to " +
                        head->short_hex());
    return;
  }
  ws_.working = merge::render(ws_.replica.materialize(*head));
  ws_.base = head;
}

std::size_t Client::sync() {
  const std::size_t added = absorb(server_.call(pull_request()));
  follow_head();
  return added;
}

std::size_t Client::pull_peer(net::Transport& peer) {
  const std::size_t added = absorb(peer.call(pull_request()));
  follow_head();
  return added;
}

std::optional<std::uint64_t> Client::checkout() {
  if (config_.mode == Mode::kAutomatic) acquire_if_needed();
  sync();
  return ws_.ticket;
}

std::uint64_t Client::lock() {
  const Json reply = server_.call(request("checkout"));
  ws_.ticket = net::require_uint(reply, "ticket");
  return *ws_.ticket;
}

void Client::release() {
  try {
    server_.call(request("release"));
  } catch (const NotLockHolder&) {
    ws_.ticket.reset();
    throw;
  }
  ws_.ticket.reset();
}

void Client::acquire_if_needed() {
  if (!ws_.ticket) lock();
}

void Client::release_quietly() {
  if (!ws_.ticket) return;
  try {
    release();
  } catch (const NotLockHolder&) {
    warnings_.push_back("lock was already gone (lease expired)");
  }
}

CheckInOutcome Client::checkin() {
  const merge::Changeset cs =
      merge::diff(ws_.base_document(), ws_.working_document());
  if (cs.empty()) {
    server_.call(request("ping"));
    if (config_.mode == Mode::kAutomatic) release_quietly();
    CheckInOutcome none;
    none.head = ws_.base;
    return none;
  }
  if (config_.mode == Mode::kAutomatic) acquire_if_needed();
  CheckInOutcome out;
  try {
    out = send_checkin(ws_.base, std::nullopt, cs);
  } catch (...) {
    if (config_.mode == Mode::kAutomatic) release_quietly();
    throw;
  }
  if (config_.mode == Mode::kAutomatic) release_quietly();
  return out;
}

CheckInOutcome Client::send_checkin(const std::optional<RevisionId>& base,
                                    const std::optional<RevisionId>& merge_parent,
                                    const merge::Changeset& cs) {
  Json req = request("checkin");
  req["base"] = net::id_or_null(base);
  req["changeset"] = net::to_json(cs);
  req["ticket"] = ws_.ticket ? Json(*ws_.ticket) : Json(nullptr);
  if (merge_parent) req["merge_parent"] = merge_parent->hex();
  const Json reply = server_.call(req);

  CheckInOutcome out;
  out.kind = kind_from_string(net::require_string(reply, "result"));
  out.head = net::optional_id(reply, "head");
  out.revision = RevisionId::from_hex(net::require_string(reply, "revision"));
  out.merge = net::optional_id(reply, "merge");
  if (reply.contains("regions")) {
    for (const Json& r : reply.at("regions")) {
      out.regions.push_back(net::region_from_json(r));
    }
  }

  absorb(server_.call(pull_request()));
  if (out.kind == CheckInOutcome::Kind::kConflictRecorded) {
    ws_.conflict = PendingConflict{*out.revision, *out.head, out.regions};
    ws_.base = out.revision;
    warnings_.push_back("check-in conflicts with " + out.head->short_hex() +
                        " in " + std::to_string(out.regions.size()) +
                        " region(s); kept as " + out.revision->short_hex());
  } else {
    ws_.conflict.reset();
    ws_.base = out.head;
    ws_.working = merge::render(ws_.replica.materialize(*out.head));
  }
  return out;
}

CheckInOutcome Client::resolve(merge::Resolution how) {
  if (!ws_.conflict) throw NothingToResolve("no pending conflict on " + ws_.file());
  if (config_.mode == Mode::kAutomatic) acquire_if_needed();
  CheckInOutcome out;
  try {
    absorb(server_.call(pull_request()));
    const RevisionId branch = ws_.conflict->branch;
    const RevisionId head = *ws_.replica.head();
    if (ws_.replica.is_ancestor(branch, head)) {
      ws_.conflict.reset();
      follow_head();
      out.head = head;
    } else {
      const RevisionId anc = ws_.replica.common_ancestor(branch, head);
      const merge::Document anc_doc = ws_.replica.materialize(anc);
      const merge::Document ours = ws_.replica.materialize(branch);
      const merge::Document theirs = ws_.replica.materialize(head);
      const merge::Document resolved = merge::merge3_resolved(
          anc_doc, merge::diff(anc_doc, ours), merge::diff(anc_doc, theirs), how);
      out = send_checkin(head, branch, merge::diff(theirs, resolved));
    }
  } catch (...) {
    if (config_.mode == Mode::kAutomatic) release_quietly();
    throw;
  }
  if (config_.mode == Mode::kAutomatic) release_quietly();
  return out;
}

std::string Client::history() const { return render_history(ws_.replica); }

std::string render_history(const store::RevisionGraph& replica) {
  std::ostringstream out;
  out << std::left << std::setw(6) << "seq" << std::setw(26) << "time"
      << std::setw(12) << "author" << std::setw(12) << "device" << std::setw(14)
      << "revision" << "changes\n";
  for (const store::Revision& rev : replica.log()) {
    std::string changes = store::hunk_summary(rev.changeset);
    if (rev.parents.size() == 2) changes += " (merge)";
    out << std::left << std::setw(6) << *rev.server_seq << std::setw(26)
        << format_time(rev.server_time_ms) << std::setw(12) << rev.author
        << std::setw(12) << rev.device << std::setw(14) << rev.id.short_hex()
        << changes << '\n';
  }
  return out.str();
}

}  // namespace coco::client
