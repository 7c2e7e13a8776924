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

#include <stdexcept>
#include <string>
#include <string_view>

namespace coco {

// Every failure carries a stable name. The name is what travels on the wire
// ({"ok": false, "error": "<name>"}) and what the CLI prints, so callers on
// the far side of a socket can rebuild the same exception type.
class Error : public std::runtime_error {
 public:
  Error(std::string_view name, const std::string& message)
      : std::runtime_error(message), name_(name) {}

  std::string_view name() const noexcept { return name_; }

 private:
  std::string name_;
};

#define COCO_DEFINE_ERROR(Type)                                 \
  class Type : public Error {                                   \
   public:                                                      \
    static constexpr std::string_view kName = #Type;            \
    explicit Type(const std::string& message = #Type)           \
        : Error(kName, message) {}                              \
  }

COCO_DEFINE_ERROR(EncodingError);
COCO_DEFINE_ERROR(PatchRangeError);
COCO_DEFINE_ERROR(UnknownRevision);
COCO_DEFINE_ERROR(NoCommonAncestor);
COCO_DEFINE_ERROR(IntegrityError);
COCO_DEFINE_ERROR(ProtocolError);
COCO_DEFINE_ERROR(NotLockHolder);
COCO_DEFINE_ERROR(LeaseDenied);
COCO_DEFINE_ERROR(NotFound);
COCO_DEFINE_ERROR(ConnectionError);
COCO_DEFINE_ERROR(NothingToResolve);
COCO_DEFINE_ERROR(HarnessError);
COCO_DEFINE_ERROR(IoError);
COCO_DEFINE_ERROR(ConfigError);

#undef COCO_DEFINE_ERROR

// Rebuilds the typed exception for a wire error name. Unknown names come back
// as a plain Error so nothing is lost.
[[noreturn]] void throw_named_error(std::string_view name,
                                    const std::string& message);

}  // namespace coco
