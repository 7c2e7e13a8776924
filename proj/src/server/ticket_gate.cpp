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


#include "coco/server/ticket_gate.hpp"

#include <algorithm>
#include <thread>

#include "coco/server/clock.hpp"

namespace coco::server {

std::int64_t Clock::wall_ms() const {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

const SteadyClock& SteadyClock::instance() {
  static const SteadyClock clock;
  return clock;
}

bool TicketGate::spin(const Backoff& backoff,
                      const std::function<bool()>& admitted,
                      const std::function<bool()>& give_up) {
  for (int i = 0; i < backoff.yield_spins; ++i) {
    if (admitted()) return true;
    if (give_up()) return false;
    std::this_thread::yield();
  }
  auto pause = backoff.first;
  while (true) {
    if (admitted()) return true;
    if (give_up()) return false;
    std::this_thread::sleep_for(pause);
    pause = std::min(pause * 2, backoff.cap);
  }
}

}  // namespace coco::server
