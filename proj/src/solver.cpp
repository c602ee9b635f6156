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

#include "twinsym/solver.hpp"

#include <algorithm>

#include "twinsym/bitblast.hpp"
#include "twinsym/error.hpp"
#include "twinsym/sat.hpp"

namespace twinsym {

namespace {
bool by_id(Expr a, Expr b) { return a->id < b->id; }
}  // namespace

ClauseSet::ClauseSet(std::initializer_list<Expr> clauses) {
  for (Expr c : clauses) insert(c);
}

ClauseSet::ClauseSet(std::span<const Expr> clauses) {
  for (Expr c : clauses) insert(c);
}

bool ClauseSet::insert(Expr c) {
  if (c->width != 1) throw WidthError("clause " + to_string(c) + " is not width 1");
  auto it = std::lower_bound(clauses_.begin(), clauses_.end(), c, by_id);
  if (it != clauses_.end() && *it == c) return false;
  clauses_.insert(it, c);
  return true;
}

void ClauseSet::insert_all(const ClauseSet& other) {
  std::vector<Expr> merged;
  merged.reserve(clauses_.size() + other.clauses_.size());
  std::set_union(clauses_.begin(), clauses_.end(), other.clauses_.begin(), other.clauses_.end(),
                 std::back_inserter(merged), by_id);
  clauses_ = std::move(merged);
}

bool ClauseSet::contains(Expr c) const {
  return std::binary_search(clauses_.begin(), clauses_.end(), c, by_id);
}

bool ClauseSet::includes(const ClauseSet& other) const {
  return std::includes(clauses_.begin(), clauses_.end(), other.clauses_.begin(),
                       other.clauses_.end(), by_id);
}

bool ClauseSet::includes_ids(std::span<const ExprId> sorted_ids) const {
  auto it = clauses_.begin();
  for (ExprId id : sorted_ids) {
    it = std::lower_bound(it, clauses_.end(), id, [](Expr e, ExprId v) { return e->id < v; });
    if (it == clauses_.end() || (*it)->id != id) return false;
  }
  return true;
}

std::vector<ExprId> ClauseSet::ids() const {
  std::vector<ExprId> out;
  out.reserve(clauses_.size());
  for (Expr c : clauses_) out.push_back(c->id);
  return out;
}

SolveResult EmbeddedSolver::is_sat(const ClauseSet& clauses, bool want_core) const {
  SolveResult result;
  sat::Solver s(options_.seed);
  BitBlaster blaster(s);
  std::vector<sat::Lit> selectors;
  std::vector<Expr> selected;
  for (Expr c : clauses) {
    if (c->is_const(1)) continue;
    if (c->is_const(0)) {
      result.kind = SolveResult::Kind::Unsat;
      result.core = {c};
      return result;
    }
    const sat::Lit lit = blaster.literal(c);
    const sat::Lit sel = sat::Lit::make(s.new_var());
    s.add_clause({~sel, lit});
    selectors.push_back(sel);
    selected.push_back(c);
  }

  const auto start = std::chrono::steady_clock::now();
  auto remaining = [&]() {
    sat::Budget b;
    const std::uint64_t used = s.conflicts();
    b.max_conflicts = used >= options_.max_conflicts ? 0 : options_.max_conflicts - used;
    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - start);
    b.max_time = elapsed >= options_.max_time ? std::chrono::milliseconds{0}
                                              : options_.max_time - elapsed;
    return b;
  };

  switch (s.solve(selectors, remaining())) {
    case sat::Result::Unknown:
      result.kind = SolveResult::Kind::Unknown;
      return result;
    case sat::Result::Sat:
      result.kind = SolveResult::Kind::Sat;
      for (const auto& [name, entry] : blaster.vars()) result.model[name] = blaster.model_value(name);
      return result;
    case sat::Result::Unsat:
      break;
  }
  result.kind = SolveResult::Kind::Unsat;

  auto to_indices = [&](const std::vector<sat::Lit>& failed) {
    std::vector<std::size_t> idx;
    for (sat::Lit l : failed) {
      auto it = std::find(selectors.begin(), selectors.end(), l);
      if (it != selectors.end()) idx.push_back(static_cast<std::size_t>(it - selectors.begin()));
    }
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    return idx;
  };
  std::vector<std::size_t> core = to_indices(s.failed_assumptions());

  if (want_core && options_.minimize_cores) {
    // Deletion-based shrinking. A clause confirmed necessary stays necessary
    // in every unsatisfiable subset, so one pass over the candidates suffices.
    std::vector<std::size_t> necessary;
    while (!core.empty()) {
      const std::size_t candidate = core.back();
      core.pop_back();
      std::vector<sat::Lit> trial;
      for (std::size_t i : necessary) trial.push_back(selectors[i]);
      for (std::size_t i : core) trial.push_back(selectors[i]);
      const sat::Result r = s.solve(trial, remaining());
      if (r == sat::Result::Unsat) {
        std::vector<std::size_t> smaller = to_indices(s.failed_assumptions());
        core.clear();
        for (std::size_t i : smaller) {
          if (std::find(necessary.begin(), necessary.end(), i) == necessary.end()) core.push_back(i);
        }
      } else if (r == sat::Result::Sat) {
        necessary.push_back(candidate);
      } else {
        // Out of budget: the current set is still unsatisfiable, just not
        // known to be minimal.
        necessary.push_back(candidate);
        necessary.insert(necessary.end(), core.begin(), core.end());
        core.clear();
      }
    }
    core = std::move(necessary);
  }

  for (std::size_t i : core) result.core.push_back(selected[i]);
  std::sort(result.core.begin(), result.core.end(), by_id);
  return result;
}

std::unique_ptr<Solver> make_embedded_solver(SolverOptions options) {
  return std::make_unique<EmbeddedSolver>(options);
}

ModelEnumeration enumerate_models(const Solver& solver, ExprPool& pool, const ClauseSet& clauses,
                                  std::span<const VarDecl> vars, std::size_t k) {
  ModelEnumeration out;
  ClauseSet work = clauses;
  const auto clause_vars = free_vars(clauses.clauses());
  for (std::size_t i = 0; i < k; ++i) {
    SolveResult r = solver.is_sat(work, false);
    if (r.unknown()) {
      out.partial = true;
      break;
    }
    if (r.unsat()) break;
    Assignment model;
    for (const auto& [name, width] : clause_vars) model[name] = r.model.count(name) ? r.model[name] : 0;
    std::vector<Expr> differs;
    for (const auto& [name, width] : vars) {
      const std::uint64_t v = r.model.count(name) ? r.model[name] : 0;
      model[name] = v;
      differs.push_back(pool.ne(pool.var(name, width), pool.constant(width, v)));
    }
    out.models.push_back(std::move(model));
    if (differs.empty()) break;  // only one projection exists
    work.insert(pool.disjunction(differs));
  }
  return out;
}

EqualityResult check_equal(const Solver& solver, ExprPool& pool, const ClauseSet& base, Expr a,
                           Expr b) {
  if (a->width != b->width) throw WidthError("check_equal: operand widths differ");
  EqualityResult out;
  if (a == b) {
    out.kind = EqualityResult::Kind::ProvedEqual;
    return out;
  }
  Expr differ = pool.simplify(pool.ne(a, b));
  if (differ->is_const(0)) {
    out.kind = EqualityResult::Kind::ProvedEqual;
    return out;
  }
  ClauseSet query = base;
  query.insert(differ);
  SolveResult r = solver.is_sat(query, false);
  switch (r.kind) {
    case SolveResult::Kind::Unsat:
      out.kind = EqualityResult::Kind::ProvedEqual;
      break;
    case SolveResult::Kind::Sat:
      out.kind = EqualityResult::Kind::Differs;
      out.witness = std::move(r.model);
      break;
    case SolveResult::Kind::Unknown:
      out.kind = EqualityResult::Kind::Unknown;
      break;
  }
  return out;
}

}  // namespace twinsym
