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


// Cross-checks a symbolic execution tree against the concrete interpreter.

#ifndef TWINSYM_TESTS_SUPPORT_PATH_ORACLE_HPP_
#define TWINSYM_TESTS_SUPPORT_PATH_ORACLE_HPP_

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "twinsym/executor.hpp"
#include "twinsym/harness.hpp"
#include "twinsym/interpreter.hpp"
#include "twinsym/solver.hpp"

namespace twinsym::testing {

/// Instruction indices executed along the root path of `leaf`.
inline std::vector<std::uint32_t> symbolic_trace(const ExecTree& tree, NodeId leaf) {
  std::vector<std::uint32_t> out;
  for (NodeId n : tree.path(leaf)) {
    for (const Event& e : tree.node(n).events) {
      if (e.kind == Event::Kind::InstrExec) out.push_back(e.instr);
    }
  }
  return out;
}

inline bool leaf_admits(const ExecTree& tree, const ExprPool& pool, NodeId leaf,
                        const Assignment& a) {
  for (ExprId c : tree.constraint_ids(leaf)) {
    if (eval(pool.get(c), a) != 1) return false;
  }
  return true;
}

/// Compares the concrete run on `input` with what `leaf` predicts. Returns an
/// empty string on agreement, otherwise a description of the mismatch.
inline std::string compare_with_leaf(ExprPool& pool, const ExecTree& tree, NodeId leaf,
                                     const Program& program, const Harness& h, Side side,
                                     const Assignment& input) {
  const TreeNode& n = tree.node(leaf);
  ConcreteOutcome o = run_concrete(h, side, program, input);
  std::ostringstream why;
  auto describe = [&] {
    why << " (leaf " << leaf << ", input";
    for (const auto& [k, v] : input) why << ' ' << k << '=' << v;
    why << ')';
  };
  if (o.status != n.status) {
    why << "status " << status_name(o.status) << " vs " << status_name(n.status);
    describe();
    return why.str();
  }
  if (o.instr_trace != symbolic_trace(tree, leaf)) {
    why << "instruction trace differs";
    describe();
    return why.str();
  }
  for (const Annotation& a : h.annotations) {
    Expr e = resolve_annotation(pool, *n.terminal, a, side, program);
    Assignment full = input;
    for (const auto& [name, w] : free_vars(e)) full.emplace(name, 0);
    const std::uint64_t sym = eval(e, full);
    const std::uint64_t con = read_location(o, a.at[index(side)]);
    if (sym != con) {
      why << "annotation " << a.display() << ": concrete " << con << " vs symbolic " << sym;
      describe();
      return why.str();
    }
  }
  return {};
}

/// Path soundness: up to k models of every leaf replay to the same trace,
/// status and annotation values.
inline std::vector<std::string> check_path_soundness(ExprPool& pool, const Solver& solver,
                                                     const ExecTree& tree, const Program& program,
                                                     const Harness& h, Side side, std::size_t k) {
  std::vector<std::string> failures;
  for (NodeId leaf : tree.leaves()) {
    ClauseSet cs = path_constraints(tree, pool, leaf);
    ModelEnumeration models = enumerate_models(solver, pool, cs, h.symbols, k);
    if (models.models.empty()) failures.push_back("leaf " + std::to_string(leaf) + " has no model");
    for (const Assignment& m : models.models) {
      std::string why = compare_with_leaf(pool, tree, leaf, program, h, side, m);
      if (!why.empty()) failures.push_back(why);
    }
  }
  return failures;
}

/// Partition: every assignment in `inputs` that satisfies the harness
/// assumptions is admitted by exactly one leaf, which predicts its run.
inline std::vector<std::string> check_partition(ExprPool& pool, const ExecTree& tree,
                                                const Program& program, const Harness& h, Side side,
                                                const std::vector<Assignment>& inputs) {
  std::vector<std::string> failures;
  const std::vector<Expr> assumptions = compile_assumptions(pool, h);
  const std::vector<NodeId> leaves = tree.leaves();
  for (const Assignment& a : inputs) {
    bool assumed = true;
    for (Expr c : assumptions) assumed &= eval(c, a) == 1;
    if (!assumed) continue;
    std::vector<NodeId> hits;
    for (NodeId l : leaves) {
      if (leaf_admits(tree, pool, l, a)) hits.push_back(l);
    }
    if (hits.size() != 1) {
      std::ostringstream why;
      why << hits.size() << " leaves admit input";
      for (const auto& [k, v] : a) why << ' ' << k << '=' << v;
      failures.push_back(why.str());
      continue;
    }
    std::string why = compare_with_leaf(pool, tree, hits[0], program, h, side, a);
    if (!why.empty()) failures.push_back(why);
  }
  return failures;
}

}  // namespace twinsym::testing

#endif  // TWINSYM_TESTS_SUPPORT_PATH_ORACLE_HPP_
