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


// coco-lab: replays the conflict experiments and writes a CSV report.

#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "coco/client/client.hpp"
#include "coco/error.hpp"
#include "coco/lab/report.hpp"
#include "coco/lab/scenario.hpp"

int main(int argc, char** argv) {
  using namespace coco;
  CLI::App app{"coco-lab: file conflict experiments"};
  app.require_subcommand(1);
  auto* run = app.add_subcommand("run", "run a preset or a single scenario");

  std::string preset_name;
  lab::ScenarioSpec spec;
  std::string system = "proposed";
  std::string mode = "auto";
  std::string plan = "disjoint";
  std::string out_path;
  std::uint64_t seed = 1;

  auto* preset_opt = run->add_option("--preset", preset_name)
                         ->check(CLI::IsMember({"fig7", "fig8", "fig9", "fig10"}));
  run->add_option("--users", spec.users)->excludes(preset_opt);
  run->add_option("--devices", spec.devices)->excludes(preset_opt);
  run->add_option("--edits", spec.edits, "edits per principal")->excludes(preset_opt);
  run->add_option("--system", system)
      ->check(CLI::IsMember({"proposed", "baseline"}))
      ->excludes(preset_opt);
  run->add_option("--mode", mode)->check(CLI::IsMember({"auto", "manual"}))->excludes(preset_opt);
  run->add_option("--plan", plan)
      ->check(CLI::IsMember({"disjoint", "overlapping"}))
      ->excludes(preset_opt);
  run->add_flag("--misuse", spec.misuse, "manual mode: check in without checkout")
      ->excludes(preset_opt);
  run->add_option("--seed", seed);
  run->add_option("--out", out_path, "CSV report path (stdout if omitted)");

  CLI11_PARSE(app, argc, argv);

  try {
    std::vector<lab::ScenarioSpec> specs;
    if (!preset_name.empty()) {
      specs = lab::preset(preset_name, seed);
    } else {
      spec.system = lab::system_from_string(system);
      spec.mode = client::mode_from_string(mode);
      spec.plan = lab::edit_plan_from_string(plan);
      spec.seed = seed;
      specs.push_back(spec);
    }

    std::vector<lab::Metrics> metrics;
    for (const auto& s : specs) {
      const lab::ScenarioRun r = lab::run_scenario(s);
      std::cerr << std::left << std::setw(9) << lab::to_string(s.system)
                << " users=" << std::setw(3) << s.users << "devices=" << std::setw(2)
                << s.devices << " mode=" << std::setw(7) << client::to_string(s.mode)
                << (s.misuse ? "misuse " : "") << "conflicts=" << r.metrics.conflicts
                << " revisions=" << r.metrics.revision_count << " head="
                << r.metrics.head_digest.substr(0, 12) << " time="
                << std::fixed << std::setprecision(3) << r.metrics.wall_time.count()
                << "s\n";
      if (preset_name == "fig7" && !r.replicas.empty()) {
        std::cerr << client::render_history(r.replicas.front());
      }
      metrics.push_back(r.metrics);
    }
    if (out_path.empty()) {
      lab::write_report(metrics, std::cout);
    } else {
      lab::emit_report(metrics, out_path);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.name() << ": " << e.what() << "\n";
    return 2;
  }
  return 0;
}
