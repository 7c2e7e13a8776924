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

#include "coco/error.hpp"

#include <map>

namespace coco {

namespace {

template <typename E>
[[noreturn]] void raise(const std::string& message) {
  throw E(message);
}

}  // namespace

void throw_named_error(std::string_view name, const std::string& message) {
  using Thrower = void (*)(const std::string&);
  static const std::map<std::string_view, Thrower> kThrowers = {
      {EncodingError::kName, &raise<EncodingError>},
      {PatchRangeError::kName, &raise<PatchRangeError>},
      {UnknownRevision::kName, &raise<UnknownRevision>},
      {NoCommonAncestor::kName, &raise<NoCommonAncestor>},
      {IntegrityError::kName, &raise<IntegrityError>},
      {ProtocolError::kName, &raise<ProtocolError>},
      {NotLockHolder::kName, &raise<NotLockHolder>},
      {LeaseDenied::kName, &raise<LeaseDenied>},
      {NotFound::kName, &raise<NotFound>},
      {ConnectionError::kName, &raise<ConnectionError>},
      {NothingToResolve::kName, &raise<NothingToResolve>},
      {HarnessError::kName, &raise<HarnessError>},
      {IoError::kName, &raise<IoError>},
      {ConfigError::kName, &raise<ConfigError>},
  };
  if (auto it = kThrowers.find(name); it != kThrowers.end()) {
    it->second(message);
  }
  throw Error(name, message);
}

}  // namespace coco
