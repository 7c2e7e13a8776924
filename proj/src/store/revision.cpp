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


#include "coco/store/revision.hpp"

#include <charconv>
#include <string>

#include "coco/error.hpp"
#include "coco/store/sha256.hpp"

namespace coco::store {

namespace {

constexpr std::string_view kContentTag = "coco-content 1";
constexpr std::string_view kRevisionTag = "coco-revision 1";

void put_field(std::string& out, std::string_view bytes) {
  out += std::to_string(bytes.size());
  out.push_back(' ');
  out.append(bytes);
  out.push_back('\n');
}

void put_number(std::string& out, std::uint64_t value) {
  put_field(out, std::to_string(value));
}

// Reads fields back in the order they were written.
class FieldReader {
 public:
  explicit FieldReader(std::string_view bytes) : bytes_(bytes) {}

  std::string_view next() {
    const auto space = bytes_.find(' ', pos_);
    if (space == std::string_view::npos || space == pos_) fail("length");
    std::size_t length = 0;
    const auto* first = bytes_.data() + pos_;
    const auto* last = bytes_.data() + space;
    auto [ptr, ec] = std::from_chars(first, last, length);
    if (ec != std::errc() || ptr != last) fail("length");
    const std::size_t begin = space + 1;
    if (begin + length + 1 > bytes_.size() || bytes_[begin + length] != '\n') {
      fail("field body");
    }
    pos_ = begin + length + 1;
    return bytes_.substr(begin, length);
  }

  std::uint64_t number() {
    const std::string_view text = next();
    std::uint64_t value = 0;
    auto [ptr, ec] =
        std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
      fail("number");
    }
    return value;
  }

  std::size_t offset() const { return pos_; }
  bool done() const { return pos_ == bytes_.size(); }

  [[noreturn]] void fail(const char* what) const {
    throw IntegrityError(std::string("malformed revision record: bad ") +
                         what + " at byte " + std::to_string(pos_));
  }

 private:
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

void put_changeset(std::string& out, const merge::Changeset& cs) {
  put_field(out, !cs.final_newline ? "keep" : (*cs.final_newline ? "lf" : "nolf"));
  put_number(out, cs.hunks.size());
  for (const auto& h : cs.hunks) {
    put_number(out, h.base_start);
    put_number(out, h.base_len);
    put_number(out, h.replacement.size());
    for (const auto& line : h.replacement) put_field(out, line);
  }
}

merge::Changeset read_changeset(FieldReader& in) {
  merge::Changeset cs;
  const std::string_view eol = in.next();
  if (eol == "lf") {
    cs.final_newline = true;
  } else if (eol == "nolf") {
    cs.final_newline = false;
  } else if (eol != "keep") {
    in.fail("final newline flag");
  }
  const std::uint64_t n_hunks = in.number();
  for (std::uint64_t i = 0; i < n_hunks; ++i) {
    merge::Hunk h;
    h.base_start = in.number();
    h.base_len = in.number();
    const std::uint64_t n_lines = in.number();
    for (std::uint64_t k = 0; k < n_lines; ++k) {
      h.replacement.emplace_back(in.next());
    }
    cs.hunks.push_back(std::move(h));
  }
  return cs;
}

void put_content(std::string& out, const std::vector<RevisionId>& parents,
                 const merge::Changeset& cs, std::string_view author,
                 std::string_view device) {
  put_number(out, parents.size());
  for (const auto& p : parents) put_field(out, p.hex());
  put_field(out, author);
  put_field(out, device);
  put_changeset(out, cs);
}

}  // namespace

bool RevisionId::is_valid_hex(std::string_view hex) noexcept {
  if (hex.size() != 64) return false;
  for (char c : hex) {
    if (!((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'))) return false;
  }
  return true;
}

RevisionId RevisionId::from_hex(std::string_view hex) {
  if (!is_valid_hex(hex)) {
    throw ProtocolError("not a revision id: '" + std::string(hex) + "'");
  }
  RevisionId id;
  id.hex_ = std::string(hex);
  return id;
}

std::string encode_content(const std::vector<RevisionId>& parents,
                           const merge::Changeset& cs,
                           std::string_view author, std::string_view device) {
  std::string out;
  put_field(out, kContentTag);
  put_content(out, parents, cs, author, device);
  return out;
}

RevisionId compute_id(const std::vector<RevisionId>& parents,
                      const merge::Changeset& cs, std::string_view author,
                      std::string_view device) {
  return RevisionId::from_hex(
      sha256_hex(encode_content(parents, cs, author, device)));
}

std::string encode_revision(const Revision& rev) {
  std::string out;
  put_field(out, kRevisionTag);
  put_field(out, rev.id.hex());
  put_content(out, rev.parents, rev.changeset, rev.author, rev.device);
  put_field(out, rev.server_seq ? std::to_string(*rev.server_seq) : "");
  put_field(out, std::to_string(rev.server_time_ms));
  put_field(out, sha256_hex(out));
  return out;
}

Revision decode_revision(std::string_view bytes) {
  FieldReader in(bytes);
  if (in.next() != kRevisionTag) in.fail("tag");
  Revision rev;
  const std::string_view id_hex = in.next();
  if (!RevisionId::is_valid_hex(id_hex)) in.fail("id");
  rev.id = RevisionId::from_hex(id_hex);

  const std::uint64_t n_parents = in.number();
  if (n_parents > 2) in.fail("parent count");
  for (std::uint64_t i = 0; i < n_parents; ++i) {
    const std::string_view p = in.next();
    if (!RevisionId::is_valid_hex(p)) in.fail("parent id");
    rev.parents.push_back(RevisionId::from_hex(p));
  }
  rev.author = std::string(in.next());
  rev.device = std::string(in.next());
  rev.changeset = read_changeset(in);

  const std::string_view seq = in.next();
  if (!seq.empty()) {
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(seq.data(), seq.data() + seq.size(), value);
    if (ec != std::errc() || ptr != seq.data() + seq.size()) in.fail("seq");
    rev.server_seq = value;
  }
  const std::string_view time = in.next();
  {
    std::int64_t value = 0;
    auto [ptr, ec] =
        std::from_chars(time.data(), time.data() + time.size(), value);
    if (time.empty() || ec != std::errc() || ptr != time.data() + time.size()) {
      in.fail("time");
    }
    rev.server_time_ms = value;
  }

  const std::size_t body_end = in.offset();
  const std::string_view checksum = in.next();
  if (!in.done()) in.fail("trailing bytes");
  if (checksum != sha256_hex(bytes.substr(0, body_end))) {
    throw IntegrityError("revision " + rev.id.short_hex() +
                         ": checksum mismatch");
  }
  if (compute_id(rev.parents, rev.changeset, rev.author, rev.device) !=
      rev.id) {
    throw IntegrityError("revision " + rev.id.short_hex() +
                         ": id does not match content");
  }
  return rev;
}

std::string hunk_summary(const merge::Changeset& cs) {
  std::size_t added = 0;
  std::size_t removed = 0;
  for (const auto& h : cs.hunks) {
    added += h.replacement.size();
    removed += h.base_len;
  }
  std::string out = "+" + std::to_string(added) + " -" +
                    std::to_string(removed) + " in " +
                    std::to_string(cs.hunks.size()) +
                    (cs.hunks.size() == 1 ? " hunk" : " hunks");
  if (cs.final_newline) {
    out += *cs.final_newline ? ", adds final newline"
                             : ", drops final newline";
  }
  return out;
}

}  // namespace coco::store
