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

// A small conflict-driven clause-learning SAT solver with assumption support.
//
// Two watched literals, first-UIP learning, activity-based branching with
// phase saving and Luby restarts. Solving under assumptions reports the
// subset of assumptions responsible for unsatisfiability.

#ifndef TWINSYM_SAT_HPP_
#define TWINSYM_SAT_HPP_

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace twinsym::sat {

using Var = int;

struct Lit {
  int x = -1;

  static Lit make(Var v, bool negated = false) { return Lit{2 * v + (negated ? 1 : 0)}; }
  Var var() const { return x >> 1; }
  bool negated() const { return x & 1; }
  Lit operator~() const { return Lit{x ^ 1}; }
  bool operator==(const Lit&) const = default;
  auto operator<=>(const Lit&) const = default;
};

enum class Result { Sat, Unsat, Unknown };

struct Budget {
  std::uint64_t max_conflicts = 1'000'000;
  std::chrono::milliseconds max_time{30'000};
};

class Solver {
 public:
  explicit Solver(std::uint64_t seed = 0);

  Var new_var();
  int num_vars() const { return static_cast<int>(assigns_.size()); }

  /// Adds a clause at decision level 0. Returns false once the clause
  /// database is known to be unsatisfiable.
  bool add_clause(std::vector<Lit> lits);

  Result solve(std::span<const Lit> assumptions = {}, const Budget& budget = {});

  /// Valid after solve() returned Sat.
  bool model_value(Var v) const { return model_[static_cast<std::size_t>(v)]; }
  bool model_value(Lit l) const { return model_value(l.var()) != l.negated(); }

  /// After Unsat under assumptions: the assumptions that together are
  /// contradictory. Empty when the clauses alone are unsatisfiable.
  const std::vector<Lit>& failed_assumptions() const { return failed_; }

  std::uint64_t conflicts() const { return total_conflicts_; }

 private:
  using CRef = std::uint32_t;
  static constexpr CRef kNoReason = ~CRef{0};

  struct Clause {
    std::vector<Lit> lits;
    bool learnt = false;
  };
  struct Watcher {
    CRef cref;
    Lit blocker;
  };

  // Lifted boolean: 0 true, 1 false, 2 undefined.
  static constexpr std::uint8_t kTrue = 0;
  static constexpr std::uint8_t kFalse = 1;
  static constexpr std::uint8_t kUndef = 2;

  std::uint8_t value(Lit l) const {
    const std::uint8_t v = assigns_[static_cast<std::size_t>(l.var())];
    return v == kUndef ? kUndef : static_cast<std::uint8_t>(v ^ (l.negated() ? 1 : 0));
  }
  int level(Var v) const { return levels_[static_cast<std::size_t>(v)]; }
  int decision_level() const { return static_cast<int>(trail_lim_.size()); }

  void attach(CRef cr);
  void enqueue(Lit l, CRef reason);
  std::optional<CRef> propagate();
  void analyze(CRef confl, std::vector<Lit>& learnt, int& backtrack_level);
  void analyze_final(Lit p);
  void cancel_until(int lvl);
  Lit pick_branch();
  void bump(Var v);
  void decay() { var_inc_ *= 1.0 / 0.95; }

  // Binary max-heap over activity.
  void heap_insert(Var v);
  Var heap_pop();
  void heap_up(std::size_t i);
  void heap_down(std::size_t i);
  bool heap_less(Var a, Var b) const { return activity_[a] > activity_[b]; }

  bool ok_ = true;
  std::vector<Clause> clauses_;
  std::vector<std::vector<Watcher>> watches_;
  std::vector<std::uint8_t> assigns_;
  std::vector<int> levels_;
  std::vector<CRef> reasons_;
  std::vector<bool> polarity_;
  std::vector<double> activity_;
  std::vector<Lit> trail_;
  std::vector<std::size_t> trail_lim_;
  std::size_t qhead_ = 0;
  std::vector<std::uint8_t> seen_;
  double var_inc_ = 1.0;
  std::vector<Var> heap_;
  std::vector<int> heap_index_;
  std::vector<bool> model_;
  std::vector<Lit> failed_;
  std::uint64_t total_conflicts_ = 0;
  std::uint64_t rng_state_;
};

}  // namespace twinsym::sat

#endif  // TWINSYM_SAT_HPP_
