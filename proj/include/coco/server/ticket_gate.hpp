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

#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>

namespace coco::server {

// How a waiter polls: a few yields, then sleeps that double from `first` up
// to `cap`.
struct Backoff {
  int yield_spins = 32;
  std::chrono::microseconds first{1000};
  std::chrono::microseconds cap{64000};
};

// FIFO ticket lock. Waiters draw increasing tickets and are admitted strictly
// in ticket order. The gate itself only orders; who holds it, and for how
// long, is FileLock's business.
class TicketGate {
 public:
  std::uint64_t take() { return next_ticket_.fetch_add(1); }

  std::uint64_t now_serving() const { return now_serving_.load(); }
  std::uint64_t next_ticket() const { return next_ticket_.load(); }
  bool idle() const { return now_serving() == next_ticket(); }

  // Moves to the next ticket, but only if `ticket` is the one being served.
  // Release and lease expiry can race; exactly one of them wins.
  bool advance_from(std::uint64_t ticket) {
    return now_serving_.compare_exchange_strong(ticket, ticket + 1);
  }

  // Polls until `admitted()` returns true or `give_up()` does. Returns
  // whether it was admitted.
  static bool spin(const Backoff& backoff, const std::function<bool()>& admitted,
                   const std::function<bool()>& give_up);

 private:
  std::atomic<std::uint64_t> next_ticket_{0};
  std::atomic<std::uint64_t> now_serving_{0};
};

}  // namespace coco::server
