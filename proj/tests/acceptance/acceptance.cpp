// Copyright 2026 The twinsym Authors
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


// Acceptance suite: one PASS or FAIL line per criterion, then a summary.
// Exit status is 0 only when every criterion passes.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "support/fixture.hpp"
#include "support/path_oracle.hpp"
#include "support/random_expr.hpp"
#include "support/solver_oracle.hpp"
#include "support/view_oracle.hpp"
#include "twinsym/analysis.hpp"
#include "twinsym/report.hpp"
#include "twinsym/tree_view.hpp"

namespace fs = std::filesystem;
using namespace twinsym;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "failed: " << what << "; ";
    pass &= ok;
  }
};

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

// Runs the CLI and returns its exit status.
int cli(const std::string& args) {
  const std::string cmd = std::string(TWINSYM_CLI) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "twinsym-acceptance";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

// Runs a corpus harness through the CLI and loads the session it wrote.
std::pair<int, SessionDoc> cli_session(const std::string& harness, const std::string& extra = "") {
  const fs::path out = scratch() / harness;
  const int code = cli("run " + testing::corpus_path(harness) + " -o " + out.string() + " " + extra);
  SessionDoc doc;
  if (fs::exists(out / "session.json")) doc = load_session((out / "session.json").string());
  return {code, std::move(doc)};
}

void sort_equivalence(Outcome& o) {
  const auto start = Clock::now();
  const auto [code, doc] = cli_session("sort_equal.json");
  const double secs = seconds_since(start);
  o.require(code == 0, "exit 0");
  o.require(!doc.pairs.empty(), "compatible pairs exist");
  std::size_t equal = 0;
  for (const PairRecord& p : doc.pairs) {
    for (const TargetDiff& t : p.diff.targets) {
      if (t.name == "array" && t.verdict == Verdict::ProvedEqual) ++equal;
    }
  }
  o.require(equal == doc.pairs.size(), "array ProvedEqual on every pair");
  o.require(secs < 120, "runtime under 2 minutes");
  o.detail << doc.trees[0].leaves().size() << "x" << doc.trees[1].leaves().size() << " leaves, "
           << doc.pairs.size() << " pairs, " << equal << " ProvedEqual, " << secs << " s";
}

// Every concretion of every pair replays through both interpreters with the
// recorded statuses and values.
std::size_t replay_all(const SessionDoc& doc, Outcome& o) {
  const std::array<Program, 2> programs = {parse_program(doc.programs[0].source),
                                           parse_program(doc.programs[1].source)};
  std::size_t n = 0;
  for (const PairRecord& p : doc.pairs) {
    std::vector<std::pair<const Concretion*, const std::string*>> all;
    for (const TargetDiff& t : p.diff.targets) {
      for (const Concretion& c : t.concretions) all.emplace_back(&c, &t.name);
    }
    for (const Concretion& c : p.diff.pair_concretions) all.emplace_back(&c, nullptr);
    for (const auto& [c, target] : all) {
      ++n;
      if (target) o.require(c->values.at(*target).first != c->values.at(*target).second, "concretion differs");
      for (Side side : {Side::Left, Side::Right}) {
        const ConcreteOutcome run = run_concrete(doc.harness, side, programs[index(side)], c->inputs);
        o.require(run.status == (side == Side::Left ? p.diff.left_status : p.diff.right_status),
                  "replayed status");
        for (const auto& [name, lr] : c->values) {
          const Annotation* a = doc.harness.find_annotation(name);
          o.require(read_location(run, a->at[index(side)]) == (side == Side::Left ? lr.first : lr.second),
                    "replayed value of " + name);
        }
      }
    }
  }
  return n;
}

void seeded_bug(Outcome& o) {
  const auto [code, doc] = cli_session("sort_bug.json");
  o.require(code == 1, "exit 1");
  std::size_t differing = 0;
  for (const PairRecord& p : doc.pairs) {
    for (const TargetDiff& t : p.diff.targets) differing += t.name == "array" && t.verdict == Verdict::Differs;
  }
  o.require(differing >= 1, "at least one pair whose array Differs");
  const std::size_t replayed = replay_all(doc, o);
  o.require(replayed > 0, "concretions emitted");
  o.detail << differing << " pairs with array Differs, " << replayed << " concretions replayed bit-exact";
}

void overflow_and_assumptions(Outcome& o) {
  const auto start = Clock::now();
  const auto [open_code, open] = cli_session("watch.json");
  std::size_t status_rows = 0;
  std::size_t trap_rows = 0;
  for (const PairRecord& p : open.pairs) {
    if (!p.diff.status_differs()) continue;
    ++status_rows;
    trap_rows += p.diff.right_status == Status::TrapOverflow;
  }
  o.require(open_code == 1, "unconstrained run exits 1");
  o.require(status_rows > 0, "StatusDiffers pairs present");
  o.require(trap_rows > 0, "a TrapOverflow status difference");
  const std::size_t replayed = replay_all(open, o);

  const auto [bounded_code, bounded] = cli_session("watch_bounded.json");
  std::size_t targets = 0;
  bool all_equal = !bounded.pairs.empty();
  for (const PairRecord& p : bounded.pairs) {
    all_equal &= !p.diff.status_differs() && p.diff.io.verdict == Verdict::ProvedEqual;
    for (const TargetDiff& t : p.diff.targets) {
      ++targets;
      all_equal &= t.verdict == Verdict::ProvedEqual;
    }
  }
  const double secs = seconds_since(start);
  o.require(bounded_code == 0, "bounded run exits 0");
  o.require(all_equal, "every target ProvedEqual under the calendar assumptions");
  o.require(secs < 300, "runtime under 5 minutes");
  o.detail << "unconstrained: " << status_rows << " StatusDiffers pairs (" << trap_rows << " TrapOverflow), "
           << replayed << " concretions replayed; bounded: " << bounded.pairs.size() << " pairs, " << targets
           << " targets ProvedEqual; " << secs << " s";
}

void memoization(Outcome& o) {
  for (const char* name : {"sort_equal.json", "sort_bug.json", "watch.json", "watch_bounded.json"}) {
    AnalysisOptions on;
    AnalysisOptions off;
    off.core_cache = false;
    const SessionDoc a = run_analysis_file(testing::corpus_path(name), on);
    const SessionDoc b = run_analysis_file(testing::corpus_path(name), off);
    o.require(a.matrix.pairs == b.matrix.pairs, std::string("identical pairs on ") + name);
    o.require(a.matrix.stats.sat_queries_issued < b.matrix.stats.sat_queries_issued,
              std::string("fewer queries on ") + name);
    o.detail << name << " " << a.matrix.stats.sat_queries_issued << " vs " << b.matrix.stats.sat_queries_issued
             << "; ";
  }
}

void partition(Outcome& o) {
  const auto start = Clock::now();
  const Harness h = load_harness(std::string(TWINSYM_TEST_DATA_DIR) + "/partition.json");
  std::vector<Assignment> inputs;
  for (std::uint64_t a = 0; a < 16; ++a) {
    for (std::uint64_t b = 0; b < 16; ++b) inputs.push_back({{"a", a}, {"b", b}});
  }
  ExprPool pool;
  EmbeddedSolver solver;
  std::size_t leaves = 0;
  for (Side side : {Side::Left, Side::Right}) {
    const Program p = load_program(h.program_path(side));
    Executor ex(pool, solver, p, h, side);
    ex.run_all();
    leaves += ex.tree().leaves().size();
    const auto failures = testing::check_partition(pool, ex.tree(), p, h, side, inputs);
    o.require(failures.empty(), std::string(side_name(side)) + ": " + (failures.empty() ? "" : failures[0]));
  }
  const double secs = seconds_since(start);
  o.require(secs < 60, "runtime under 1 minute");
  o.detail << inputs.size() << " inputs x 2 programs, " << leaves << " leaves, " << secs << " s";
}

void solver_fuzz(Outcome& o) {
  ExprPool pool;
  EmbeddedSolver solver;
  std::mt19937_64 rng(20260);
  constexpr int kRounds = 10'000;
  std::size_t sat = 0;
  std::size_t unsat = 0;
  std::size_t clauses_dropped = 0;
  for (int round = 0; round < kRounds && o.pass; ++round) {
    static constexpr std::uint32_t kWidths[] = {1, 2, 3, 4, 5, 6, 7, 8};
    std::vector<VarDecl> vars;
    const int nvars = 1 + static_cast<int>(rng() % 3);
    std::uint32_t bits = 0;
    for (int i = 0; i < nvars; ++i) {
      // Keep brute force at most 2^16 assignments per set.
      std::uint32_t w = kWidths[rng() % 8];
      if (bits + w > 16) w = 16 - bits;
      if (w == 0) break;
      bits += w;
      vars.emplace_back("v" + std::to_string(i), w);
    }
    testing::RandomExprGen gen(pool, rng(), vars);
    ClauseSet cs;
    const int n = 1 + static_cast<int>(rng() % 5);
    for (int i = 0; i < n; ++i) cs.insert(gen.gen(1, 3));
    const bool expected = testing::brute_force_sat(cs, vars);
    const SolveResult r = solver.is_sat(cs);
    if (r.unknown()) {
      o.require(false, "Unknown on round " + std::to_string(round));
      break;
    }
    o.require(r.sat() == expected, "verdict on round " + std::to_string(round));
    if (r.sat()) {
      ++sat;
      Assignment full = r.model;
      for (const auto& v : vars) full.try_emplace(v.first, 0);
      o.require(testing::satisfies(cs, full), "model on round " + std::to_string(round));
      continue;
    }
    ++unsat;
    const ClauseSet core(r.core);
    o.require(cs.includes(core), "core is a subset on round " + std::to_string(round));
    o.require(!testing::brute_force_sat(core, vars), "core is unsat on round " + std::to_string(round));
    for (Expr drop : core) {
      ClauseSet less;
      for (Expr c : core) {
        if (c != drop) less.insert(c);
      }
      ++clauses_dropped;
      o.require(testing::brute_force_sat(less, vars), "core is minimal on round " + std::to_string(round));
    }
  }
  o.detail << kRounds << " sets: " << sat << " sat, " << unsat << " unsat, " << clauses_dropped
           << " minimality checks";
}

void view_properties(Outcome& o) {
  std::size_t trees = 0;
  std::size_t specs = 0;
  for (const char* name : testing::kCorpusHarnesses) {
    const SessionDoc doc = run_analysis_file(testing::corpus_path(name));
    for (const ExecTree& t : doc.trees) {
      ++trees;
      for (int level : {1, 2}) {
        const auto failures = testing::check_compression(t, compress(t, level));
        o.require(failures.empty(), std::string(name) + " level " + std::to_string(level) + ": " +
                                        (failures.empty() ? "" : failures[0]));
      }
    }
    for (const auto& spec : testing::prune_specs(doc)) {
      ++specs;
      const auto failures =
          testing::check_prune_symmetry(doc, prune(doc.trees[0], doc.trees[1], doc.matrix, doc.pairs, spec), spec);
      o.require(failures.empty(), std::string(name) + " " + spec[0].to_string() + ": " +
                                      (failures.empty() ? "" : failures[0]));
    }
  }
  o.detail << trees << " trees at levels 1 and 2, " << specs << " prune specs";
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<void(Outcome&)>> criteria[] = {
      {"sort-equivalence", sort_equivalence},
      {"seeded-bug-detection", seeded_bug},
      {"overflow-divergence-and-assumption-repair", overflow_and_assumptions},
      {"core-cache-reduces-queries", memoization},
      {"partition-oracle", partition},
      {"solver-soundness-fuzz", solver_fuzz},
      {"compression-and-pruning", view_properties},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      check(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail.str() << std::endl;
    failed += !o.pass;
  }
  std::cout << (std::size(criteria) - failed) << "/" << std::size(criteria) << " criteria passed" << std::endl;
  fs::remove_all(scratch());
  return failed == 0 ? 0 : 1;
}
