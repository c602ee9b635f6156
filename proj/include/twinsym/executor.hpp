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


#ifndef TWINSYM_EXECUTOR_HPP_
#define TWINSYM_EXECUTOR_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "twinsym/expr.hpp"
#include "twinsym/harness.hpp"
#include "twinsym/ir.hpp"
#include "twinsym/solver.hpp"

namespace twinsym {

using NodeId = std::uint32_t;

struct Event {
  enum class Kind { InstrExec, MemRead, MemWrite, RegWrite, IO };
  Kind kind = Kind::InstrExec;
  std::uint32_t instr = 0;
  std::uint32_t addr = 0;  // MemRead, MemWrite
  std::string reg;         // RegWrite
  ExprId value = 0;        // every kind but InstrExec

  bool operator==(const Event&) const = default;
};

std::string_view event_kind_name(Event::Kind k);
std::optional<Event::Kind> event_kind_from_name(std::string_view name);

/// Machine contents at a terminal node, by expression id.
struct Snapshot {
  std::map<std::string, ExprId> regs;
  std::map<std::uint32_t, ExprId> mem;  // every byte initialized or written
  bool operator==(const Snapshot&) const = default;
};

/// One symbolic state segment: the span of execution between two splits.
struct TreeNode {
  NodeId id = 0;
  std::optional<NodeId> parent;
  std::vector<NodeId> children;
  /// Clauses this node adds to its parent's set; the root holds the harness
  /// assumptions.
  std::vector<ExprId> delta;
  std::vector<Event> events;
  /// Running on internal nodes; AssumeUnsat on pruned markers.
  Status status = Status::Running;
  /// Satisfiability could not be decided; never paired.
  bool quarantined = false;
  std::optional<Snapshot> terminal;

  bool is_leaf() const { return children.empty(); }
  bool operator==(const TreeNode&) const = default;
};

struct ExecTree {
  Side side = Side::Left;
  std::vector<TreeNode> nodes;  // nodes[i].id == i; node 0 is the root

  const TreeNode& node(NodeId id) const { return nodes.at(id); }
  /// Terminal leaves in id order: excludes pruned markers and quarantined
  /// nodes.
  std::vector<NodeId> leaves() const;
  std::vector<NodeId> quarantined() const;
  /// Ids from the root down to `id`.
  std::vector<NodeId> path(NodeId id) const;
  /// Union of deltas along the root path.
  std::vector<ExprId> constraint_ids(NodeId id) const;
  bool operator==(const ExecTree&) const = default;
};

ClauseSet path_constraints(const ExecTree& tree, const ExprPool& pool, NodeId id);

struct SymState {
  std::uint32_t pc = 0;
  std::vector<Expr> regs;  // indexed like Program::registers
  std::map<std::uint32_t, Expr> mem;
  ClauseSet constraints;
  Status status = Status::Running;
  std::vector<std::uint32_t> visits;
  NodeId node = 0;
  /// A model of `constraints`, used to decide one side of a split for free.
  Assignment model;
};

struct ExecStats {
  std::uint64_t solver_queries = 0;
  std::uint64_t splits = 0;
  std::uint64_t steps = 0;
  bool operator==(const ExecStats&) const = default;
};

/// Symbolic executor for one side of a harness. The tree is built as states
/// are stepped; run_all() explores depth-first until no state is running.
class Executor {
 public:
  Executor(ExprPool& pool, const Solver& solver, const Program& program, const Harness& harness,
           Side side);

  /// Root state: symbols at their placements, everything else zero, and the
  /// harness assumptions as constraints. Throws ValidationError when the
  /// placements do not fit the program.
  SymState init_state();

  /// Executes the instruction at s.pc. Returns the states that continue or
  /// terminate; a returned state whose status is not Running is final.
  std::vector<SymState> step(SymState s);

  /// Explores from init_state() until every path terminates.
  void run_all();

  const ExecTree& tree() const { return tree_; }
  ExecTree take_tree() { return std::move(tree_); }
  const ExecStats& stats() const { return stats_; }

 private:
  NodeId new_node(NodeId parent, std::vector<ExprId> delta);
  void emit(const SymState& s, Event e);
  Expr value(Expr e) { return pool_.simplify(e); }
  Expr operand(const SymState& s, const Instruction& inst, std::size_t i, std::uint32_t width);
  void write_reg(SymState& s, std::uint32_t reg, Expr v);
  SymState finish(SymState s, Status status);
  /// Splits `s` on `cond`: the returned pair holds the state under cond and
  /// under not-cond, each present when satisfiable. Quarantined children are
  /// finalized here and reported as absent.
  std::pair<std::optional<SymState>, std::optional<SymState>> split(const SymState& s, Expr cond,
                                                                    bool fork_unique);
  SolveResult query(const ClauseSet& clauses);
  std::optional<std::uint64_t> concrete_address(const SymState& s, const Instruction& inst);
  std::vector<Expr> compile_assertions(const SymState& s);

  ExprPool& pool_;
  const Solver& solver_;
  const Program& program_;
  const Harness& harness_;
  Side side_;
  ExecTree tree_;
  ExecStats stats_;
};

/// Value of an annotated location in a terminal snapshot: the little-endian
/// concatenation of its bytes, or the register's expression. Bytes never
/// initialized read as zero.
Expr resolve_annotation(ExprPool& pool, const Snapshot& snap, const Annotation& a, Side side,
                        const Program& program);
Expr resolve_annotation(ExprPool& pool, const SymState& s, const Annotation& a, Side side,
                        const Program& program);

Snapshot snapshot(const SymState& s, const Program& program);

}  // namespace twinsym

#endif  // TWINSYM_EXECUTOR_HPP_
