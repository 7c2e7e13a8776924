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

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "coco/merge/changeset.hpp"

namespace coco::store {

// SHA-256 of a revision's content fields, as 64 lowercase hex digits.
class RevisionId {
 public:
  RevisionId() = default;

  // Throws ProtocolError unless `hex` is 64 lowercase hex digits.
  static RevisionId from_hex(std::string_view hex);
  static bool is_valid_hex(std::string_view hex) noexcept;

  const std::string& hex() const noexcept { return hex_; }
  std::string short_hex() const { return hex_.substr(0, 10); }
  bool empty() const noexcept { return hex_.empty(); }

  auto operator<=>(const RevisionId&) const = default;

 private:
  std::string hex_;
};

struct Revision {
  RevisionId id;
  // Empty for a root. The changeset is always relative to parents[0]; a
  // second parent only records where a merge came from.
  std::vector<RevisionId> parents;
  merge::Changeset changeset;
  std::string author;
  std::string device;
  // Assigned by the server when the revision is committed there. This, not
  // the wall clock, is the order of history.
  std::optional<std::uint64_t> server_seq;
  std::int64_t server_time_ms = 0;  // advisory

  bool committed() const noexcept { return server_seq.has_value(); }
  bool operator==(const Revision&) const = default;
};

// The hashed part of a revision: parents in order, the changeset, author and
// device. Every field is written as "<decimal length> <bytes>\n".
std::string encode_content(const std::vector<RevisionId>& parents,
                           const merge::Changeset& cs,
                           std::string_view author, std::string_view device);

RevisionId compute_id(const std::vector<RevisionId>& parents,
                      const merge::Changeset& cs, std::string_view author,
                      std::string_view device);

// A full revision file: content fields, then server_seq and server_time,
// then a checksum over everything before it.
std::string encode_revision(const Revision& rev);

// Throws IntegrityError if the bytes are malformed, the checksum does not
// match, or the stored id does not hash from the content.
Revision decode_revision(std::string_view bytes);

// "+3 -1 in 2 hunks", for history listings.
std::string hunk_summary(const merge::Changeset& cs);

}  // namespace coco::store

template <>
struct std::hash<coco::store::RevisionId> {
  std::size_t operator()(const coco::store::RevisionId& id) const noexcept {
    return std::hash<std::string>{}(id.hex());
  }
};
