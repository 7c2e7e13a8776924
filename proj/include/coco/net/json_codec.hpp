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

#include <optional>
#include <string>
#include <vector>

#include "coco/merge/changeset.hpp"
#include "coco/merge/merge.hpp"
#include "coco/store/revision.hpp"
#include "json.hpp"

namespace coco::net {

using Json = nlohmann::json;

// Wire shapes. Changesets travel as
//   {"hunks": [{"start": 1, "len": 1, "lines": ["x"]}], "final_newline": true}
// with "final_newline" omitted when unchanged. Decoders throw ProtocolError on
// anything malformed.

Json to_json(const merge::Hunk& h);
Json to_json(const merge::Changeset& cs);
Json to_json(const store::Revision& rev);
Json to_json(const merge::ConflictRegion& region);

merge::Hunk hunk_from_json(const Json& j);
merge::Changeset changeset_from_json(const Json& j);
store::Revision revision_from_json(const Json& j);
merge::ConflictRegion region_from_json(const Json& j);

// Field accessors that turn a missing or mistyped field into ProtocolError.
std::string require_string(const Json& j, const char* key);
std::optional<std::string> optional_string(const Json& j, const char* key);
std::uint64_t require_uint(const Json& j, const char* key);
std::optional<store::RevisionId> optional_id(const Json& j, const char* key);
Json id_or_null(const std::optional<store::RevisionId>& id);

// {"ok": false, "error": name, "message": text}
Json error_reply(std::string_view name, const std::string& message);

// Throws the typed error carried by an {"ok": false} reply.
void raise_if_error(const Json& reply);

}  // namespace coco::net
