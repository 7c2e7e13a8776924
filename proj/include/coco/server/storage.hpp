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

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "coco/store/graph.hpp"

namespace coco::server {

// Each shared file lives in its own directory under the data root, in the
// revision-store layout: <root>/<file>/revisions/*.rev and <root>/<file>/HEAD.
class Storage {
 public:
  explicit Storage(std::filesystem::path root);

  std::vector<std::string> files() const;
  store::RevisionGraph load(const std::string& file) const;
  void append(const std::string& file, const store::Revision& rev);
  void write_head(const std::string& file,
                  const std::optional<store::RevisionId>& head);

 private:
  std::filesystem::path root_;
};

// Throws ProtocolError unless `name` is usable as a single path component.
void validate_file_name(const std::string& name);

}  // namespace coco::server
