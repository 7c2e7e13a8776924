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

#include "coco/merge/changeset.hpp"
#include "coco/merge/document.hpp"

namespace coco::merge {

// Line diff on a longest-common-subsequence alignment (Myers' greedy O(ND)
// search after trimming the common prefix and suffix). The result is minimal:
// its edit_size() equals |base| + |modified| - 2 * LCS(base, modified), and
// apply(base, diff(base, modified)) == modified.
Changeset diff(const Document& base, const Document& modified);

}  // namespace coco::merge
