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

namespace coco::server {

// Time source for leases. Tests swap in ManualClock to expire leases without
// sleeping.
class Clock {
 public:
  using time_point = std::chrono::steady_clock::time_point;

  virtual ~Clock() = default;
  virtual time_point now() const = 0;
  // Wall-clock milliseconds since the epoch; stored on revisions as advisory
  // metadata only.
  virtual std::int64_t wall_ms() const;
};

class SteadyClock : public Clock {
 public:
  time_point now() const override { return std::chrono::steady_clock::now(); }
  static const SteadyClock& instance();
};

class ManualClock : public Clock {
 public:
  time_point now() const override {
    return time_point(std::chrono::nanoseconds(offset_ns_.load()));
  }
  std::int64_t wall_ms() const override { return offset_ns_.load() / 1000000; }

  void advance(std::chrono::nanoseconds by) { offset_ns_ += by.count(); }

 private:
  std::atomic<std::int64_t> offset_ns_{1'000'000'000};
};

}  // namespace coco::server
