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

// Satisfiability of conjunctions of width-1 expressions.

#ifndef TWINSYM_SOLVER_HPP_
#define TWINSYM_SOLVER_HPP_

#include <chrono>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "twinsym/expr.hpp"

namespace twinsym {

/// A set of width-1 clauses kept sorted and deduplicated by expression id.
class ClauseSet {
 public:
  ClauseSet() = default;
  ClauseSet(std::initializer_list<Expr> clauses);
  explicit ClauseSet(std::span<const Expr> clauses);

  /// Returns false when `c` was already present. Throws WidthError when `c`
  /// is not width 1.
  bool insert(Expr c);
  void insert_all(const ClauseSet& other);
  bool contains(Expr c) const;
  /// True when every clause of `other` is also in this set.
  bool includes(const ClauseSet& other) const;
  bool includes_ids(std::span<const ExprId> sorted_ids) const;

  std::size_t size() const { return clauses_.size(); }
  bool empty() const { return clauses_.empty(); }
  auto begin() const { return clauses_.begin(); }
  auto end() const { return clauses_.end(); }
  const std::vector<Expr>& clauses() const { return clauses_; }
  std::vector<ExprId> ids() const;

  friend ClauseSet operator|(const ClauseSet& a, const ClauseSet& b) {
    ClauseSet out = a;
    out.insert_all(b);
    return out;
  }
  bool operator==(const ClauseSet& other) const { return clauses_ == other.clauses_; }

 private:
  std::vector<Expr> clauses_;
};

struct SolveResult {
  enum class Kind { Sat, Unsat, Unknown };
  Kind kind = Kind::Unknown;
  Assignment model;        // Sat: values of the clauses' free variables
  std::vector<Expr> core;  // Unsat: an unsatisfiable subset of the input

  bool sat() const { return kind == Kind::Sat; }
  bool unsat() const { return kind == Kind::Unsat; }
  bool unknown() const { return kind == Kind::Unknown; }
};

struct SolverOptions {
  bool minimize_cores = true;
  std::uint64_t max_conflicts = 1'000'000;
  std::chrono::milliseconds max_time{30'000};
  std::uint64_t seed = 0;
};

/// Decision procedure interface. Implementations are stateless between
/// queries and is_sat may be called concurrently.
class Solver {
 public:
  virtual ~Solver() = default;

  /// Decides the conjunction of `clauses`. An Unsat result carries a core
  /// when `want_core` is set.
  virtual SolveResult is_sat(const ClauseSet& clauses, bool want_core = true) const = 0;

  const SolverOptions& options() const { return options_; }

 protected:
  explicit Solver(SolverOptions options) : options_(options) {}
  SolverOptions options_;
};

/// Bit-blasting to CNF plus the embedded CDCL search. Cores come from clause
/// selector assumptions and are shrunk by deletion when minimize_cores is set.
class EmbeddedSolver final : public Solver {
 public:
  explicit EmbeddedSolver(SolverOptions options = {}) : Solver(options) {}
  SolveResult is_sat(const ClauseSet& clauses, bool want_core = true) const override;
};

struct ModelEnumeration {
  std::vector<Assignment> models;
  bool partial = false;  // a resource limit cut enumeration short
};

/// Up to `k` models of `clauses`, pairwise distinct on `vars`, each found by
/// blocking the previous projections. Every returned assignment covers all
/// of `vars` and all free variables of `clauses`.
ModelEnumeration enumerate_models(const Solver& solver, ExprPool& pool, const ClauseSet& clauses,
                                  std::span<const VarDecl> vars, std::size_t k);

struct EqualityResult {
  enum class Kind { ProvedEqual, Differs, Unknown };
  Kind kind = Kind::Unknown;
  Assignment witness;  // Differs: a model of base and a != b
};

/// Decides whether `a == b` under `base`.
EqualityResult check_equal(const Solver& solver, ExprPool& pool, const ClauseSet& base, Expr a,
                           Expr b);

std::unique_ptr<Solver> make_embedded_solver(SolverOptions options = {});

}  // namespace twinsym

#endif  // TWINSYM_SOLVER_HPP_
