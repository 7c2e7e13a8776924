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


#include "coco/store/persist.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <system_error>

#include "coco/error.hpp"

namespace coco::store {

namespace fs = std::filesystem;

namespace {

constexpr std::string_view kExtension = ".rev";

fs::path revisions_dir(const fs::path& dir) { return dir / "revisions"; }

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw IoError("cannot create " + dir.string() + ": " + ec.message());
  }
}

}  // namespace

void write_file_atomic(const fs::path& path, std::string_view bytes) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("short write to " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    throw IoError("cannot rename into " + path.string() + ": " + ec.message());
  }
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return std::move(buffer).str();
}

void write_revision(const fs::path& dir, const Revision& rev) {
  ensure_dir(revisions_dir(dir));
  write_file_atomic(revisions_dir(dir) / (rev.id.hex() + std::string(kExtension)),
                    encode_revision(rev));
}

void write_head(const fs::path& dir, const std::optional<RevisionId>& head) {
  ensure_dir(dir);
  write_file_atomic(dir / "HEAD", head ? head->hex() + "\n" : std::string());
}

void save(const RevisionGraph& graph, const fs::path& dir) {
  ensure_dir(revisions_dir(dir));
  std::set<std::string> keep;
  for (const auto& [id, rev] : graph.revisions()) {
    write_revision(dir, rev);
    keep.insert(id.hex() + std::string(kExtension));
  }
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(revisions_dir(dir), ec)) {
    const std::string name = entry.path().filename().string();
    if (entry.path().extension() == kExtension && !keep.count(name)) {
      fs::remove(entry.path(), ec);
    }
  }
  write_head(dir, graph.head());
}

RevisionGraph load(const fs::path& dir) {
  RevisionGraph graph;
  if (!fs::exists(dir)) return graph;

  std::map<RevisionId, Revision> pending;
  if (fs::exists(revisions_dir(dir))) {
    for (const auto& entry : fs::directory_iterator(revisions_dir(dir))) {
      if (entry.path().extension() != kExtension) continue;
      Revision rev = decode_revision(read_file(entry.path()));
      if (entry.path().stem().string() != rev.id.hex()) {
        throw IntegrityError(entry.path().string() +
                             " does not hold the revision it is named for");
      }
      pending.emplace(rev.id, std::move(rev));
    }
  }

  // Parents before children.
  while (!pending.empty()) {
    bool progressed = false;
    for (auto it = pending.begin(); it != pending.end();) {
      bool ready = true;
      for (const auto& p : it->second.parents) {
        if (!graph.contains(p)) ready = false;
      }
      if (ready) {
        graph.insert(it->second);
        it = pending.erase(it);
        progressed = true;
      } else {
        ++it;
      }
    }
    if (!progressed) {
      throw IntegrityError("revision " + pending.begin()->first.short_hex() +
                           " refers to a missing parent");
    }
  }

  if (fs::exists(dir / "HEAD")) {
    std::string text = read_file(dir / "HEAD");
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) {
      text.pop_back();
    }
    if (!text.empty()) {
      if (!RevisionId::is_valid_hex(text)) {
        throw IntegrityError("HEAD is not a revision id");
      }
      const RevisionId head = RevisionId::from_hex(text);
      if (!graph.contains(head)) {
        throw IntegrityError("HEAD names unknown revision " +
                             head.short_hex());
      }
      graph.set_head(head);
    }
  }
  return graph;
}

}  // namespace coco::store
