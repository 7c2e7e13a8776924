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

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "coco/client/config.hpp"
#include "coco/store/graph.hpp"

namespace coco::lab {

enum class System { kProposed, kBaseline };
enum class EditPlan { kDisjoint, kOverlapping };

std::string_view to_string(System system);
std::string_view to_string(EditPlan plan);
System system_from_string(std::string_view text);  // throws HarnessError
EditPlan edit_plan_from_string(std::string_view text);

struct ScenarioSpec {
  int users = 1;
  int devices = 1;  // per user
  int edits = 1;    // per principal; one wave per edit
  EditPlan plan = EditPlan::kDisjoint;
  System system = System::kProposed;
  client::Mode mode = client::Mode::kAutomatic;
  // Manual mode only: the first principal edits its stale copy and checks
  // in without taking the lock.
  bool misuse = false;
  std::uint64_t seed = 1;

  int principals() const { return users * devices; }
  void validate() const;  // throws HarnessError
};

struct Metrics {
  ScenarioSpec spec;
  std::uint64_t conflicts = 0;
  std::map<std::string, std::uint64_t> per_principal;
  std::string head_digest;  // sha256 of the rendered head
  std::size_t revision_count = 0;
  std::chrono::duration<double> wall_time{};
};

// Everything a run leaves behind, for checks beyond the metrics.
struct ScenarioRun {
  Metrics metrics;
  std::string head_text;
  std::vector<std::string> accepted_edits;
  std::vector<std::string> rejected_edits;
  std::vector<store::RevisionId> conflict_branches;
  // Proposed only: the server's history and every client's replica after
  // a final sync.
  store::RevisionGraph server_graph;
  std::vector<store::RevisionGraph> replicas;
};

ScenarioRun run_scenario(const ScenarioSpec& spec);

// Named experiment sets: fig7, fig8, fig9, fig10.
std::vector<ScenarioSpec> preset(std::string_view name, std::uint64_t seed);

}  // namespace coco::lab
