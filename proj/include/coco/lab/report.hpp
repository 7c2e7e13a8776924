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
#include <ostream>
#include <vector>

#include "coco/lab/scenario.hpp"

namespace coco::lab {

// CSV with header system,users,devices,mode,conflicts,revisions,seed, rows
// ordered by (system, users, devices). Throws HarnessError on an empty list.
void write_report(std::vector<Metrics> runs, std::ostream& out);
// Throws IoError when the file cannot be written.
void emit_report(std::vector<Metrics> runs, const std::filesystem::path& path);

}  // namespace coco::lab
