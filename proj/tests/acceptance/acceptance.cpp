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


// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any of them fails.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "coco/lab/scenario.hpp"
#include "coco/merge/diff.hpp"
#include "coco/merge/merge.hpp"
#include "coco/server/file_lock.hpp"
#include "coco/server/sync_service.hpp"
#include "coco/store/sha256.hpp"
#include "support/oracles.hpp"

using namespace coco;
using namespace std::chrono_literals;
using Seconds = std::chrono::duration<double>;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void fail(const std::string& why) {
    if (pass) detail << "first failure: " << why << "; ";
    pass = false;
  }
};

int failures = 0;

void report(const std::string& name, const std::function<void(Verdict&)>& body) {
  Verdict v;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(v);
  } catch (const std::exception& e) {
    v.fail(std::string("exception: ") + e.what());
  }
  const double secs = Seconds(std::chrono::steady_clock::now() - start).count();
  std::printf("%s %s: %s(%.2fs)\n", v.pass ? "PASS" : "FAIL", name.c_str(),
              v.detail.str().c_str(), secs);
  std::fflush(stdout);
  if (!v.pass) ++failures;
}

// Replays a log from scratch: each revision's document is its first
// parent's document with its own changeset applied.
std::string replay_head(const std::vector<store::Revision>& log,
                        const store::RevisionId& head) {
  std::map<store::RevisionId, merge::Document> docs;
  for (const auto& rev : log) {
    const merge::Document parent =
        rev.parents.empty() ? merge::Document{} : docs.at(rev.parents[0]);
    docs[rev.id] = merge::apply(parent, rev.changeset);
  }
  return merge::render(docs.at(head));
}

// Shared checks for one finished Proposed run.
void check_history(const lab::ScenarioRun& run, Verdict& v) {
  const auto server_log = run.server_graph.log();
  for (const auto& replica : run.replicas) {
    const auto log = replica.log();
    if (log.size() != server_log.size()) {
      v.fail("replica log length differs");
      continue;
    }
    for (std::size_t i = 0; i < log.size(); ++i) {
      if (log[i].id != server_log[i].id || log[i].server_seq != server_log[i].server_seq) {
        v.fail("replica log order differs at " + std::to_string(i));
        break;
      }
    }
    if (replica.head() != run.server_graph.head()) v.fail("replica head differs");
    const std::string text = replay_head(log, *replica.head());
    if (store::sha256_hex(text) != run.metrics.head_digest) {
      v.fail("replayed head digest differs");
    }
  }
}

void fig8(Verdict& v) {
  constexpr int kRuns = 100;
  int zero_runs[6] = {};
  int baseline_ok[6] = {};
  for (int r = 0; r < kRuns; ++r) {
    for (const auto& spec : lab::preset("fig8", static_cast<std::uint64_t>(r + 1))) {
      const auto run = lab::run_scenario(spec);
      const auto expected =
          static_cast<std::uint64_t>((spec.devices - 1) * spec.edits);
      if (spec.system == lab::System::kProposed) {
        if (run.metrics.conflicts == 0) ++zero_runs[spec.devices];
        else v.fail("proposed conflict at devices=" + std::to_string(spec.devices));
      } else {
        if (run.metrics.conflicts == expected) ++baseline_ok[spec.devices];
        else v.fail("baseline count off at devices=" + std::to_string(spec.devices));
      }
    }
  }
  for (int d = 2; d <= 5; ++d) {
    v.detail << "devices=" << d << " zero-conflict " << zero_runs[d] << "/" << kRuns
             << ", baseline=devices-1 per wave " << baseline_ok[d] << "/" << kRuns
             << "; ";
  }
}

void fig9(Verdict& v) {
  constexpr int kRuns = 100;
  std::map<int, int> zero_runs;
  int increasing = 0;
  for (int r = 0; r < kRuns; ++r) {
    std::map<int, std::uint64_t> baseline;
    for (const auto& spec : lab::preset("fig9", static_cast<std::uint64_t>(r + 1))) {
      const auto run = lab::run_scenario(spec);
      if (spec.system == lab::System::kProposed) {
        if (run.metrics.conflicts == 0) ++zero_runs[spec.users];
        else v.fail("proposed conflict at users=" + std::to_string(spec.users));
      } else {
        baseline[spec.users] = run.metrics.conflicts;
      }
    }
    bool ok = true;
    for (int u = 3; u <= 10; ++u) ok = ok && baseline[u] > baseline[u - 1];
    if (ok) ++increasing;
    else v.fail("baseline not strictly increasing in run " + std::to_string(r));
  }
  const int worst = std::min_element(zero_runs.begin(), zero_runs.end(),
                                     [](auto& a, auto& b) { return a.second < b.second; })
                        ->second;
  v.detail << "users 2..10 zero-conflict (worst) " << worst << "/" << kRuns
           << ", baseline strictly increasing " << increasing << "/" << kRuns << "; ";
}

void fig10(Verdict& v) {
  constexpr int kRuns = 20;
  std::uint64_t min_manual = UINT64_MAX;
  std::uint64_t max_auto = 0;
  for (int r = 0; r < kRuns; ++r) {
    for (const auto& spec : lab::preset("fig10", static_cast<std::uint64_t>(r + 1))) {
      if (!spec.misuse) continue;
      const auto run = lab::run_scenario(spec);
      if (spec.mode == client::Mode::kManual) {
        min_manual = std::min(min_manual, run.metrics.conflicts);
        if (run.metrics.conflicts < 1) v.fail("manual misuse produced no conflict");
        const auto head = *run.server_graph.head();
        for (const auto& branch : run.conflict_branches) {
          if (run.server_graph.is_ancestor(branch, head)) {
            v.fail("conflicted branch reached the head");
          }
        }
        for (const auto& line : run.rejected_edits) {
          if (run.head_text.find(line + "\n") != std::string::npos) {
            v.fail("conflicted edit visible in the head");
          }
        }
        check_history(run, v);
      } else {
        max_auto = std::max(max_auto, run.metrics.conflicts);
        if (run.metrics.conflicts != 0) v.fail("automatic misuse preset conflicted");
      }
    }
  }
  v.detail << "10 users manual misuse: conflicts >= " << min_manual
           << " with head untouched; same preset automatic: max conflicts "
           << max_auto << "; ";
}

void fig7(Verdict& v) {
  std::mt19937_64 rng(7);
  std::vector<lab::ScenarioSpec> specs = lab::preset("fig7", 1);
  for (const auto& s : lab::preset("fig10", 2)) {
    if (s.misuse) specs.push_back(s);
  }
  for (int i = 0; i < 20; ++i) {
    lab::ScenarioSpec s;
    s.users = 1 + static_cast<int>(rng() % 4);
    s.devices = 1 + static_cast<int>(rng() % 3);
    s.edits = 1 + static_cast<int>(rng() % 3);
    s.plan = rng() % 2 ? lab::EditPlan::kDisjoint : lab::EditPlan::kOverlapping;
    s.mode = rng() % 2 ? client::Mode::kAutomatic : client::Mode::kManual;
    s.misuse = s.mode == client::Mode::kManual && rng() % 2;
    s.seed = rng();
    specs.push_back(s);
  }
  std::size_t replicas = 0;
  for (const auto& spec : specs) {
    const auto run = lab::run_scenario(spec);
    check_history(run, v);
    replicas += run.replicas.size();
  }
  v.detail << specs.size() << " scenarios, " << replicas
           << " replicas: identical logs, bit-exact replayed digest; ";
}

void fifo(Verdict& v) {
  constexpr int kTrials = 1000;
  std::mt19937_64 rng(1000);
  int violations = 0;
  std::size_t commits = 0;
  for (int trial = 0; trial < kTrials; ++trial) {
    server::ServerOptions o;
    o.lease = 5s;
    o.backoff = server::Backoff{4, 50us, 500us};
    server::SyncService svc(o);
    const int clients = 2 + static_cast<int>(rng() % 5);
    std::vector<unsigned> delays;
    for (int c = 0; c < clients; ++c) delays.push_back(static_cast<unsigned>(rng() % 300));
    std::vector<std::thread> threads;
    for (int c = 0; c < clients; ++c) {
      threads.emplace_back([&, c] {
        const server::Principal who{"u" + std::to_string(c), "d"};
        std::this_thread::sleep_for(std::chrono::microseconds(delays[c]));
        const auto grant = svc.checkout("f", who, server::LockMode::kAutomatic);
        if (delays[c] % 2) std::this_thread::yield();
        server::CheckInRequest req;
        req.file = "f";
        req.principal = who;
        req.base = grant.head;
        req.ticket = grant.ticket;
        const std::size_t lines = grant.head ? svc.history("f").size() : 0;
        req.changeset.hunks.push_back(merge::Hunk{lines, 0, {"c" + std::to_string(c)}});
        svc.checkin(req);
        svc.release("f", who);
      });
    }
    for (auto& t : threads) t.join();
    const auto stats = svc.stats("f");
    commits += stats.commit_order.size();
    for (std::size_t i = 1; i < stats.commit_order.size(); ++i) {
      if (stats.commit_order[i - 1].ticket >= stats.commit_order[i].ticket ||
          stats.commit_order[i - 1].first_seq >= stats.commit_order[i].first_seq) {
        ++violations;
      }
    }
    if (stats.commit_order.size() != static_cast<std::size_t>(clients)) {
      v.fail("lost a check-in");
    }
  }
  if (violations) v.fail(std::to_string(violations) + " order violations");
  v.detail << kTrials << " interleavings, " << commits
           << " check-ins, seq order == ticket order, " << violations
           << " violations; ";
}

bool swapped(const merge::Conflict& a, const merge::Conflict& b) {
  if (a.regions.size() != b.regions.size()) return false;
  for (std::size_t i = 0; i < a.regions.size(); ++i) {
    const auto& x = a.regions[i];
    const auto& y = b.regions[i];
    if (x.base_start != y.base_start || x.base_len != y.base_len ||
        x.ours != y.theirs || x.theirs != y.ours) {
      return false;
    }
  }
  return true;
}

void merge_algebra(Verdict& v) {
  constexpr int kInstances = 10000;
  std::mt19937_64 rng(424242);
  int merged = 0;
  int small = 0;
  for (int i = 0; i < kInstances; ++i) {
    const std::size_t max_lines = i % 4 == 0 ? 8 : 200;
    const merge::Document base = testing::random_document(rng, max_lines);
    const merge::Document ours = testing::random_edit(rng, base, max_lines);
    const merge::Document theirs = testing::random_edit(rng, base, max_lines);
    const merge::Changeset cs_o = merge::diff(base, ours);
    const merge::Changeset cs_t = merge::diff(base, theirs);

    if (merge::apply(base, cs_o) != ours || merge::apply(base, cs_t) != theirs) {
      v.fail("round trip, instance " + std::to_string(i));
    }
    if (max_lines <= 8) {
      ++small;
      if (cs_o.edit_size() != testing::brute_force_edit_size(base.lines, ours.lines)) {
        v.fail("diff not minimal, instance " + std::to_string(i));
      }
    }

    const auto ot = merge::merge3(base, cs_o, cs_t);
    const auto to = merge::merge3(base, cs_t, cs_o);
    if (ot.index() != to.index()) {
      v.fail("asymmetric outcome, instance " + std::to_string(i));
      continue;
    }
    if (const auto* m = std::get_if<merge::Merged>(&ot)) {
      ++merged;
      if (std::get<merge::Merged>(to) != *m) v.fail("asymmetric merge");
      const auto a_then_b = testing::apply_back_to_front(
          testing::apply_back_to_front(base.lines, cs_o.hunks),
          testing::shift_past(cs_o.hunks, cs_t.hunks));
      const auto b_then_a = testing::apply_back_to_front(
          testing::apply_back_to_front(base.lines, cs_t.hunks),
          testing::shift_past(cs_t.hunks, cs_o.hunks));
      if (a_then_b != m->result.lines || b_then_a != m->result.lines) {
        v.fail("merge differs from sequential application, instance " +
               std::to_string(i));
      }
      const bool flag = cs_o.final_newline.value_or(
          cs_t.final_newline.value_or(base.final_newline));
      if (m->result.final_newline != (flag && !m->result.lines.empty())) {
        v.fail("final newline, instance " + std::to_string(i));
      }
    } else if (!swapped(std::get<merge::Conflict>(ot), std::get<merge::Conflict>(to))) {
      v.fail("conflict regions not mirrored, instance " + std::to_string(i));
    }
  }
  v.detail << kInstances << " instances (" << merged << " merged, "
           << kInstances - merged << " conflicting, " << small
           << " checked against brute-force LCS); ";
}

void lease(Verdict& v) {
  constexpr int kTrials = 1000;
  std::mt19937_64 rng(99);
  int exactly_one = 0;
  int overlaps = 0;
  for (int trial = 0; trial < kTrials; ++trial) {
    server::ManualClock clock;
    server::FileLock lock(clock, 100ms, server::Backoff{4, 20us, 200us});
    const server::Principal crashed{"ghost", "dead"};
    lock.acquire(crashed, server::LockMode::kAutomatic, [] { return false; });

    const int successors = 2 + static_cast<int>(rng() % 3);
    std::atomic<int> acquired{0};
    std::atomic<int> inside{0};
    std::atomic<bool> go{false};
    std::vector<std::thread> threads;
    for (int s = 0; s < successors; ++s) {
      threads.emplace_back([&, s] {
        const server::Principal who{"s" + std::to_string(s), "d"};
        lock.acquire(who, server::LockMode::kAutomatic, [] { return false; });
        ++acquired;
        if (++inside > 1) ++overlaps;
        while (!go) std::this_thread::yield();
        --inside;
        lock.release(who);
      });
    }
    while (lock.next_ticket() < static_cast<std::uint64_t>(successors + 1)) {
      std::this_thread::yield();
    }
    if (acquired != 0) v.fail("successor acquired before the lease ran out");
    clock.advance(99ms);
    std::this_thread::sleep_for(200us);
    if (acquired != 0) v.fail("successor acquired before the lease ran out");
    clock.advance(1ms);
    const auto deadline = std::chrono::steady_clock::now() + 2s;
    while (acquired < 1 && std::chrono::steady_clock::now() < deadline) {
      std::this_thread::yield();
    }
    std::this_thread::sleep_for(500us);
    const auto holder = lock.holder();
    if (acquired == 1 && holder && holder->ticket == 1) ++exactly_one;
    else v.fail("trial " + std::to_string(trial) + ": " + std::to_string(acquired) +
                " successors acquired");
    go = true;
    for (auto& t : threads) t.join();

    bool held = false;
    for (const auto& e : lock.events()) {
      if (e.kind == server::LockEvent::Kind::kAcquired) {
        if (held) ++overlaps;
        held = true;
      } else if (e.kind != server::LockEvent::Kind::kSkipped) {
        held = false;
      }
    }
  }

  // A few trials on the real clock.
  int real_ok = 0;
  for (int trial = 0; trial < 5; ++trial) {
    server::FileLock lock(server::SteadyClock::instance(), 100ms, server::Backoff{});
    lock.acquire({"ghost", "dead"}, server::LockMode::kAutomatic, [] { return false; });
    const auto start = std::chrono::steady_clock::now();
    lock.acquire({"next", "d"}, server::LockMode::kAutomatic, [] { return false; });
    const auto waited = std::chrono::steady_clock::now() - start;
    if (waited >= 100ms && waited < 1s) ++real_ok;
    else v.fail("real-clock lease waited " +
                std::to_string(Seconds(waited).count()) + "s");
  }

  if (overlaps) v.fail(std::to_string(overlaps) + " overlapping holders");
  v.detail << kTrials << " crash trials, exactly one successor in " << exactly_one
           << ", overlapping holders " << overlaps << ", real-clock 100 ms lease "
           << real_ok << "/5; ";
}

}  // namespace

int main() {
  report("fig8 devices: proposed zero conflicts, baseline devices-1 per wave, < 10 s",
         [](Verdict& v) {
           const auto start = std::chrono::steady_clock::now();
           fig8(v);
           const double secs = Seconds(std::chrono::steady_clock::now() - start).count();
           if (secs >= 10.0) v.fail("took " + std::to_string(secs) + "s");
         });
  report("fig9 users: proposed zero conflicts, baseline strictly increasing", fig9);
  report("fig10 manual misuse: conflict recorded, head untouched; automatic zero", fig10);
  report("fig7 history: identical replica logs, bit-exact replay", fig7);
  report("fifo: seq order equals ticket order", fifo);
  report("merge algebra: round trip, symmetry, order independence, minimal diff",
         merge_algebra);
  report("single writer: one successor after lease expiry, never two holders", lease);
  std::printf("%s: %d failing criteria\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
