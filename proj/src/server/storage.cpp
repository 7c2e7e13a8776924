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


#include "coco/server/storage.hpp"

#include "coco/error.hpp"
#include "coco/merge/document.hpp"
#include "coco/store/persist.hpp"

namespace coco::server {

void validate_file_name(const std::string& name) {
  if (name.empty() || name.size() > 255 || name == "." || name == ".." ||
      name.find_first_of(std::string("/\\\0", 3)) != std::string::npos ||
      name.front() == '.' || !merge::is_valid_utf8(name)) {
    throw ProtocolError("invalid file name '" + name + "'");
  }
}

Storage::Storage(std::filesystem::path root) : root_(std::move(root)) {
  std::error_code ec;
  std::filesystem::create_directories(root_, ec);
  if (ec) throw IoError("cannot create " + root_.string() + ": " + ec.message());
}

std::vector<std::string> Storage::files() const {
  std::vector<std::string> out;
  for (const auto& entry : std::filesystem::directory_iterator(root_)) {
    if (entry.is_directory()) out.push_back(entry.path().filename().string());
  }
  return out;
}

store::RevisionGraph Storage::load(const std::string& file) const {
  return store::load(root_ / file);
}

void Storage::append(const std::string& file, const store::Revision& rev) {
  store::write_revision(root_ / file, rev);
}

void Storage::write_head(const std::string& file,
                         const std::optional<store::RevisionId>& head) {
  store::write_head(root_ / file, head);
}

}  // namespace coco::server
