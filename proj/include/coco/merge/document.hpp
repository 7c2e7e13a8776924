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

#include <string>
#include <string_view>
#include <vector>

namespace coco::merge {

// The text of one shared file, split into lines. A line is the unit of
// change everywhere in the system: diffs, merges and conflicts are all
// expressed in whole lines.
//
// `final_newline` remembers whether the raw bytes ended in a line feed, so
// that render(normalize(bytes)) gives back the same bytes once CRLF has been
// folded to LF.
struct Document {
  std::vector<std::string> lines;
  bool final_newline = false;

  bool operator==(const Document&) const = default;
};

// Validates UTF-8, folds CRLF to LF and splits on LF.
// Throws EncodingError on malformed UTF-8 (including overlong forms and
// surrogates); binary content is rejected the same way.
Document normalize(std::string_view raw);

// Inverse of normalize: joins lines with LF and appends a trailing LF when
// final_newline is set.
std::string render(const Document& doc);

bool is_valid_utf8(std::string_view bytes) noexcept;

// Convenience for tests and tools: a document from literal lines.
Document make_document(std::vector<std::string> lines,
                       bool final_newline = true);

}  // namespace coco::merge
