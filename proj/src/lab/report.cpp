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


#include "coco/lab/report.hpp"

#include <algorithm>
#include <fstream>
#include <tuple>

#include "coco/error.hpp"

namespace coco::lab {

void write_report(std::vector<Metrics> runs, std::ostream& out) {
  if (runs.empty()) throw HarnessError("no runs to report");
  std::stable_sort(runs.begin(), runs.end(), [](const Metrics& a, const Metrics& b) {
    return std::tuple(to_string(a.spec.system), a.spec.users, a.spec.devices) <
           std::tuple(to_string(b.spec.system), b.spec.users, b.spec.devices);
  });
  out << "system,users,devices,mode,conflicts,revisions,seed\n";
  for (const Metrics& m : runs) {
    out << to_string(m.spec.system) << ',' << m.spec.users << ','
        << m.spec.devices << ',' << client::to_string(m.spec.mode) << ','
        << m.conflicts << ',' << m.revision_count << ',' << m.spec.seed << '\n';
  }
}

void emit_report(std::vector<Metrics> runs, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  write_report(std::move(runs), out);
  out.flush();
  if (!out) throw IoError("short write to " + path.string());
}

}  // namespace coco::lab
