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


#include "coco/merge/document.hpp"

#include <cstdint>

#include "coco/error.hpp"

namespace coco::merge {

bool is_valid_utf8(std::string_view bytes) noexcept {
  std::size_t i = 0;
  const std::size_t n = bytes.size();
  while (i < n) {
    const auto c = static_cast<std::uint8_t>(bytes[i]);
    if (c < 0x80) {
      ++i;
      continue;
    }
    std::size_t extra;
    std::uint32_t cp;
    if ((c & 0xE0) == 0xC0) {
      extra = 1;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      extra = 2;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      extra = 3;
      cp = c & 0x07;
    } else {
      return false;
    }
    if (i + extra >= n) return false;
    for (std::size_t k = 1; k <= extra; ++k) {
      const auto cc = static_cast<std::uint8_t>(bytes[i + k]);
      if ((cc & 0xC0) != 0x80) return false;
      cp = (cp << 6) | (cc & 0x3F);
    }
    // Overlong encodings, surrogates and values past U+10FFFF.
    static constexpr std::uint32_t kMinForLength[] = {0, 0x80, 0x800, 0x10000};
    if (cp < kMinForLength[extra]) return false;
    if (cp >= 0xD800 && cp <= 0xDFFF) return false;
    if (cp > 0x10FFFF) return false;
    i += extra + 1;
  }
  return true;
}

Document normalize(std::string_view raw) {
  if (!is_valid_utf8(raw)) {
    throw EncodingError("content is not valid UTF-8");
  }
  if (raw.find('\0') != std::string_view::npos) {
    throw EncodingError("content contains NUL bytes");
  }

  Document doc;
  std::string current;
  for (const char c : raw) {
    if (c == '\n') {
      // CRLF folds to LF. A run of CRs before LF folds too, otherwise the
      // leftover CR would turn back into CRLF on the next round trip.
      while (!current.empty() && current.back() == '\r') current.pop_back();
      doc.lines.push_back(std::move(current));
      current.clear();
      continue;
    }
    current.push_back(c);
  }
  if (!current.empty()) {
    doc.lines.push_back(std::move(current));
    doc.final_newline = false;
  } else {
    doc.final_newline = !doc.lines.empty();
  }
  return doc;
}

std::string render(const Document& doc) {
  std::string out;
  std::size_t total = 0;
  for (const auto& line : doc.lines) total += line.size() + 1;
  out.reserve(total);
  for (std::size_t i = 0; i < doc.lines.size(); ++i) {
    if (i > 0) out.push_back('\n');
    out += doc.lines[i];
  }
  if (doc.final_newline && !doc.lines.empty()) out.push_back('\n');
  return out;
}

Document make_document(std::vector<std::string> lines, bool final_newline) {
  Document doc;
  doc.lines = std::move(lines);
  doc.final_newline = final_newline && !doc.lines.empty();
  return doc;
}

}  // namespace coco::merge
