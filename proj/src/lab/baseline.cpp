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


#include "coco/lab/baseline.hpp"

namespace coco::lab {

std::int64_t BaselineState::refresh(const std::string& principal) {
  last_seen[principal] = timestamp;
  return timestamp;
}

SaveResult baseline_save(BaselineState& state, const std::string& principal,
                         std::string content, std::int64_t observed_base_time) {
  if (observed_base_time == state.timestamp) {
    state.content = std::move(content);
    ++state.timestamp;
    state.last_seen[principal] = state.timestamp;
    return SaveResult::kSaved;
  }
  state.conflict_copies.push_back(
      ConflictCopy{principal, std::move(content), observed_base_time});
  return SaveResult::kConflictCopy;
}

}  // namespace coco::lab
