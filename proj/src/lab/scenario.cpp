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


#include "coco/lab/scenario.hpp"

#include <algorithm>
#include <barrier>
#include <exception>
#include <memory>
#include <numeric>
#include <random>
#include <thread>

#include "coco/client/client.hpp"
#include "coco/error.hpp"
#include "coco/lab/baseline.hpp"
#include "coco/merge/document.hpp"
#include "coco/net/line_server.hpp"
#include "coco/server/dispatcher.hpp"
#include "coco/server/sync_service.hpp"
#include "coco/store/sha256.hpp"

namespace coco::lab {

namespace {

using SteadyTime = std::chrono::steady_clock;

constexpr const char* kFile = "shared.txt";

std::string principal_name(const ScenarioSpec& spec, int p) {
  return "user" + std::to_string(p / spec.devices) + "@dev" +
         std::to_string(p % spec.devices);
}

client::ClientConfig config_for(const ScenarioSpec& spec, int p) {
  client::ClientConfig cfg;
  cfg.user = "user" + std::to_string(p / spec.devices);
  cfg.device = "dev" + std::to_string(p % spec.devices);
  cfg.mode = spec.mode;
  return cfg;
}

// Every principal owns a slot between a header and a footer line.
std::string seed_text(int principals) {
  std::string out;
  for (int p = 0; p < principals; ++p) {
    out += "[slot " + std::to_string(p) + "]\n[end " + std::to_string(p) + "]\n\n";
  }
  return out;
}

std::string edit_line(int p, int wave) {
  return "edit p" + std::to_string(p) + " w" + std::to_string(wave);
}

std::string apply_edit(const std::string& text, int p, const std::string& line,
                       EditPlan plan) {
  merge::Document doc = merge::normalize(text);
  std::size_t at = 0;
  if (plan == EditPlan::kDisjoint) {
    const std::string footer = "[end " + std::to_string(p) + "]";
    const auto it = std::find(doc.lines.begin(), doc.lines.end(), footer);
    at = static_cast<std::size_t>(it - doc.lines.begin());
  }
  doc.lines.insert(doc.lines.begin() + static_cast<long>(at), line);
  doc.final_newline = true;
  return merge::render(doc);
}

ScenarioRun run_baseline(const ScenarioSpec& spec) {
  ScenarioRun run;
  const int n = spec.principals();
  BaselineState state;
  state.content = seed_text(n);
  std::mt19937_64 rng(spec.seed);
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);

  for (int wave = 0; wave < spec.edits; ++wave) {
    // Everyone starts the wave from the same download.
    const std::string snapshot = state.content;
    std::vector<std::int64_t> observed;
    for (int p = 0; p < n; ++p) observed.push_back(state.refresh(principal_name(spec, p)));
    std::shuffle(order.begin(), order.end(), rng);
    for (int p : order) {
      const std::string line = edit_line(p, wave);
      const SaveResult r =
          baseline_save(state, principal_name(spec, p),
                        apply_edit(snapshot, p, line, spec.plan),
                        observed[static_cast<std::size_t>(p)]);
      if (r == SaveResult::kSaved) {
        run.accepted_edits.push_back(line);
        ++run.metrics.revision_count;
      } else {
        run.rejected_edits.push_back(line);
        ++run.metrics.per_principal[principal_name(spec, p)];
      }
    }
  }
  run.metrics.conflicts = state.conflict_count();
  run.head_text = state.content;
  return run;
}

struct Tally {
  std::vector<std::string> accepted;
  std::vector<std::string> rejected;
  std::vector<store::RevisionId> branches;
};

ScenarioRun run_proposed(const ScenarioSpec& spec) {
  ScenarioRun run;
  const int n = spec.principals();

  server::ServerOptions options;
  options.lease = std::chrono::seconds(10);
  server::SyncService service(options);
  server::Dispatcher dispatcher(service);
  std::unique_ptr<net::LineServer> listener;
  try {
    listener = std::make_unique<net::LineServer>(
        0, [&](const net::Json& r) { return dispatcher.handle(r); });
  } catch (const std::exception& e) {
    throw HarnessError(std::string("cannot start server: ") + e.what());
  }
  service.put_file(kFile, seed_text(n), server::Principal{"lab", "harness"});

  const net::Endpoint endpoint{"127.0.0.1", listener->port()};
  std::vector<std::unique_ptr<net::TcpTransport>> links;
  std::vector<client::Workspace> spaces;
  for (int p = 0; p < n; ++p) {
    links.push_back(std::make_unique<net::TcpTransport>(endpoint));
    spaces.push_back(client::Workspace::in_memory(kFile));
  }

  std::vector<Tally> tallies(static_cast<std::size_t>(n));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
  std::barrier phase(n);

  auto principal = [&](int p) {
    const auto idx = static_cast<std::size_t>(p);
    client::Workspace& ws = spaces[idx];
    Tally& tally = tallies[idx];
    const bool misuser =
        spec.misuse && spec.mode == client::Mode::kManual && p == 0;
    try {
      client::Client c(config_for(spec, p), *links[idx], ws);
      c.sync();
      for (int wave = 0; wave < spec.edits; ++wave) {
        const std::string line = edit_line(p, wave);
        client::CheckInOutcome outcome;
        if (misuser) {
          // Edit the copy from the start of the wave, skip the lock, and
          // submit only after everybody else has committed.
          if (ws.conflict) {
            ws.conflict.reset();
            ws.working = merge::render(ws.base_document());
          }
          c.sync();
          ws.working = apply_edit(ws.working, p, line, spec.plan);
          phase.arrive_and_wait();
          phase.arrive_and_wait();
          outcome = c.checkin();
        } else {
          phase.arrive_and_wait();
          if (spec.mode == client::Mode::kAutomatic) {
            c.checkout();
            ws.working = apply_edit(ws.working, p, line, spec.plan);
            outcome = c.checkin();
          } else {
            c.lock();
            c.sync();
            ws.working = apply_edit(ws.working, p, line, spec.plan);
            outcome = c.checkin();
            c.release();
          }
          phase.arrive_and_wait();
        }
        if (outcome.kind == client::CheckInOutcome::Kind::kConflictRecorded) {
          tally.rejected.push_back(line);
          tally.branches.push_back(*outcome.revision);
        } else {
          tally.accepted.push_back(line);
        }
      }
    } catch (...) {
      errors[idx] = std::current_exception();
      phase.arrive_and_drop();
    }
  };

  std::vector<std::thread> threads;
  for (int p = 0; p < n; ++p) threads.emplace_back(principal, p);
  for (auto& t : threads) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  for (int p = 0; p < n; ++p) {
    const auto idx = static_cast<std::size_t>(p);
    client::Client c(config_for(spec, p), *links[idx], spaces[idx]);
    c.sync();
    run.replicas.push_back(spaces[idx].replica);
    Tally& tally = tallies[idx];
    run.accepted_edits.insert(run.accepted_edits.end(), tally.accepted.begin(),
                              tally.accepted.end());
    run.rejected_edits.insert(run.rejected_edits.end(), tally.rejected.begin(),
                              tally.rejected.end());
    run.conflict_branches.insert(run.conflict_branches.end(),
                                 tally.branches.begin(), tally.branches.end());
    if (!tally.rejected.empty()) {
      run.metrics.per_principal[principal_name(spec, p)] = tally.rejected.size();
    }
  }

  const server::FileStats stats = service.stats(kFile);
  for (const store::Revision& rev : service.history(kFile)) {
    run.server_graph.insert(rev);
  }
  run.server_graph.set_head(stats.head);
  run.metrics.conflicts = stats.conflicts;
  run.metrics.revision_count = run.server_graph.size() - 1;  // minus the seed
  run.head_text = service.get_file(kFile);
  listener->stop();
  return run;
}

}  // namespace

std::string_view to_string(System system) {
  return system == System::kBaseline ? "baseline" : "proposed";
}

std::string_view to_string(EditPlan plan) {
  return plan == EditPlan::kOverlapping ? "overlapping" : "disjoint";
}

System system_from_string(std::string_view text) {
  if (text == "proposed") return System::kProposed;
  if (text == "baseline") return System::kBaseline;
  throw HarnessError("unknown system '" + std::string(text) + "'");
}

EditPlan edit_plan_from_string(std::string_view text) {
  if (text == "disjoint") return EditPlan::kDisjoint;
  if (text == "overlapping") return EditPlan::kOverlapping;
  throw HarnessError("unknown edit plan '" + std::string(text) + "'");
}

void ScenarioSpec::validate() const {
  if (users < 1 || users > 10) throw HarnessError("users must be in 1..10");
  if (devices < 1 || devices > 5) throw HarnessError("devices must be in 1..5");
  if (edits < 1 || edits > 20) throw HarnessError("edits must be in 1..20");
}

ScenarioRun run_scenario(const ScenarioSpec& spec) {
  spec.validate();
  const auto start = SteadyTime::now();
  ScenarioRun run =
      spec.system == System::kBaseline ? run_baseline(spec) : run_proposed(spec);
  run.metrics.spec = spec;
  run.metrics.head_digest = store::sha256_hex(run.head_text);
  run.metrics.wall_time = SteadyTime::now() - start;
  return run;
}

std::vector<ScenarioSpec> preset(std::string_view name, std::uint64_t seed) {
  std::vector<ScenarioSpec> out;
  auto both = [&](ScenarioSpec s) {
    s.seed = seed;
    s.system = System::kProposed;
    out.push_back(s);
    s.system = System::kBaseline;
    out.push_back(s);
  };
  if (name == "fig7") {
    ScenarioSpec s;
    s.users = 2;
    s.devices = 2;
    s.edits = 2;
    s.seed = seed;
    out.push_back(s);
  } else if (name == "fig8") {
    for (int d = 2; d <= 5; ++d) {
      ScenarioSpec s;
      s.devices = d;
      s.edits = 2;
      both(s);
    }
  } else if (name == "fig9") {
    for (int u = 2; u <= 10; ++u) {
      ScenarioSpec s;
      s.users = u;
      s.edits = 2;
      s.plan = EditPlan::kOverlapping;
      both(s);
    }
  } else if (name == "fig10") {
    for (int u = 2; u <= 10; u += 2) {
      ScenarioSpec s;
      s.users = u;
      s.devices = 2;
      s.plan = EditPlan::kOverlapping;
      both(s);
    }
    ScenarioSpec misuse;
    misuse.users = 10;
    misuse.plan = EditPlan::kOverlapping;
    misuse.misuse = true;
    misuse.seed = seed;
    misuse.mode = client::Mode::kManual;
    out.push_back(misuse);
    misuse.mode = client::Mode::kAutomatic;
    out.push_back(misuse);
  } else {
    throw HarnessError("unknown preset '" + std::string(name) + "'");
  }
  return out;
}

}  // namespace coco::lab
