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

#include <chrono>
#include <cstdint>
#include <functional>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "coco/server/clock.hpp"
#include "coco/server/ticket_gate.hpp"

namespace coco::server {

enum class LockMode { kAutomatic, kManual };

std::string_view to_string(LockMode mode);
LockMode lock_mode_from_string(std::string_view text);  // "auto" | "manual"

// A user on one device. Two devices of the same user are different
// principals and queue separately.
struct Principal {
  std::string user;
  std::string device;

  bool valid() const { return !user.empty() && !device.empty(); }
  std::string to_string() const { return user + "@" + device; }
  auto operator<=>(const Principal&) const = default;
};

struct LockEvent {
  enum class Kind { kAcquired, kReleased, kExpired, kSkipped };
  Kind kind;
  Principal who;
  std::uint64_t ticket;
};

struct HolderInfo {
  Principal who;
  std::uint64_t ticket = 0;
  LockMode mode = LockMode::kAutomatic;
  Clock::time_point lease_expiry;
};

// Exclusive write admission for one file: a TicketGate plus who holds it and
// until when.
//
// A holder that stops talking loses the lock when its lease runs out; the
// next waiter to poll notices and moves the gate on. A ticket that is served
// but never claimed (its waiter gave up or went away) is skipped the same
// way.
class FileLock {
 public:
  FileLock(const Clock& clock, std::chrono::milliseconds lease,
           Backoff backoff);

  // Blocks until admitted and returns the ticket. Re-entrant: a principal
  // that already holds the lock gets its ticket back with a fresh lease.
  // Returns nullopt if `give_up` turns true first; the ticket is then
  // abandoned.
  std::optional<std::uint64_t> acquire(const Principal& who, LockMode mode,
                                       const std::function<bool()>& give_up);

  // Throws NotLockHolder unless `who` holds the lock.
  void release(const Principal& who);

  // Whether `who` holds the lock (under `ticket`, when given), after
  // expiring stale leases.
  bool holds(const Principal& who,
             std::optional<std::uint64_t> ticket = std::nullopt);

  // Extends the holder's lease. Throws NotLockHolder.
  void renew(const Principal& who);

  std::optional<HolderInfo> holder();
  std::uint64_t now_serving() const { return gate_.now_serving(); }
  std::uint64_t next_ticket() const { return gate_.next_ticket(); }
  std::vector<LockEvent> events() const;

 private:
  void reap_locked(Clock::time_point now);
  void advance_locked(std::uint64_t from, Clock::time_point now);

  const Clock& clock_;
  const std::chrono::milliseconds lease_;
  const Backoff backoff_;

  TicketGate gate_;
  mutable std::mutex mu_;
  std::optional<HolderInfo> holder_;
  Clock::time_point served_since_;
  std::set<std::uint64_t> abandoned_;
  std::vector<LockEvent> events_;
};

}  // namespace coco::server
