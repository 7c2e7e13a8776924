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


#include "coco/server/file_lock.hpp"

#include "coco/error.hpp"

namespace coco::server {

namespace {

// Diagnostics only; a long-lived server keeps the most recent events.
constexpr std::size_t kMaxEvents = 1 << 16;

void trim(std::vector<LockEvent>& events) {
  if (events.size() > kMaxEvents) {
    events.erase(events.begin(), events.begin() + kMaxEvents / 2);
  }
}

}  // namespace

std::string_view to_string(LockMode mode) {
  return mode == LockMode::kAutomatic ? "auto" : "manual";
}

LockMode lock_mode_from_string(std::string_view text) {
  if (text == "auto" || text == "automatic") return LockMode::kAutomatic;
  if (text == "manual") return LockMode::kManual;
  throw ProtocolError("lock mode must be 'auto' or 'manual', got '" +
                      std::string(text) + "'");
}

FileLock::FileLock(const Clock& clock, std::chrono::milliseconds lease,
                   Backoff backoff)
    : clock_(clock),
      lease_(lease),
      backoff_(backoff),
      served_since_(clock.now()) {}

void FileLock::advance_locked(std::uint64_t from, Clock::time_point now) {
  if (gate_.advance_from(from)) served_since_ = now;
}

void FileLock::reap_locked(Clock::time_point now) {
  if (holder_ && now >= holder_->lease_expiry) {
    events_.push_back({LockEvent::Kind::kExpired, holder_->who, holder_->ticket});
    const std::uint64_t ticket = holder_->ticket;
    holder_.reset();
    advance_locked(ticket, now);
  }
  // Served tickets nobody is going to claim.
  while (!holder_ && !gate_.idle()) {
    const std::uint64_t serving = gate_.now_serving();
    const bool abandoned = abandoned_.erase(serving) > 0;
    if (!abandoned && now < served_since_ + lease_) break;
    events_.push_back({LockEvent::Kind::kSkipped, Principal{}, serving});
    advance_locked(serving, now);
  }
}

std::optional<std::uint64_t> FileLock::acquire(
    const Principal& who, LockMode mode, const std::function<bool()>& give_up) {
  std::uint64_t ticket;
  {
    std::lock_guard<std::mutex> lock(mu_);
    const auto now = clock_.now();
    reap_locked(now);
    if (holder_ && holder_->who == who) {
      holder_->lease_expiry = now + lease_;
      return holder_->ticket;
    }
    ticket = gate_.take();
  }

  auto admitted = [&] {
    std::lock_guard<std::mutex> lock(mu_);
    const auto now = clock_.now();
    reap_locked(now);
    if (holder_ || gate_.now_serving() != ticket) return false;
    holder_ = HolderInfo{who, ticket, mode, now + lease_};
    events_.push_back({LockEvent::Kind::kAcquired, who, ticket});
    trim(events_);
    return true;
  };
  if (TicketGate::spin(backoff_, admitted, give_up)) return ticket;

  std::lock_guard<std::mutex> lock(mu_);
  if (gate_.now_serving() == ticket && !holder_) {
    events_.push_back({LockEvent::Kind::kSkipped, who, ticket});
    advance_locked(ticket, clock_.now());
  } else {
    abandoned_.insert(ticket);
  }
  return std::nullopt;
}

void FileLock::release(const Principal& who) {
  std::lock_guard<std::mutex> lock(mu_);
  const auto now = clock_.now();
  reap_locked(now);
  if (!holder_ || holder_->who != who) {
    throw NotLockHolder(who.to_string() + " does not hold the lock");
  }
  events_.push_back({LockEvent::Kind::kReleased, who, holder_->ticket});
  const std::uint64_t ticket = holder_->ticket;
  holder_.reset();
  advance_locked(ticket, now);
  reap_locked(now);
}

bool FileLock::holds(const Principal& who, std::optional<std::uint64_t> ticket) {
  std::lock_guard<std::mutex> lock(mu_);
  reap_locked(clock_.now());
  return holder_ && holder_->who == who &&
         (!ticket || holder_->ticket == *ticket);
}

void FileLock::renew(const Principal& who) {
  std::lock_guard<std::mutex> lock(mu_);
  const auto now = clock_.now();
  reap_locked(now);
  if (!holder_ || holder_->who != who) {
    throw NotLockHolder(who.to_string() + " does not hold the lock");
  }
  holder_->lease_expiry = now + lease_;
}

std::optional<HolderInfo> FileLock::holder() {
  std::lock_guard<std::mutex> lock(mu_);
  reap_locked(clock_.now());
  return holder_;
}

std::vector<LockEvent> FileLock::events() const {
  std::lock_guard<std::mutex> lock(mu_);
  return events_;
}

}  // namespace coco::server
