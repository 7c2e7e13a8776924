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
#include <string>
#include <vector>

namespace coco::lab {

// Model of a timestamp-synchronized file share: last writer wins, and a save
// made against an outdated timestamp is set aside as a conflicted copy.
struct ConflictCopy {
  std::string principal;
  std::string content;
  std::int64_t observed_base_time = 0;
};

struct BaselineState {
  std::string content;
  std::int64_t timestamp = 0;
  std::map<std::string, std::int64_t> last_seen;  // per principal
  std::vector<ConflictCopy> conflict_copies;

  std::size_t conflict_count() const { return conflict_copies.size(); }
  // The principal downloads the current file and notes its timestamp.
  std::int64_t refresh(const std::string& principal);
};

enum class SaveResult { kSaved, kConflictCopy };

SaveResult baseline_save(BaselineState& state, const std::string& principal,
                         std::string content, std::int64_t observed_base_time);

}  // namespace coco::lab
