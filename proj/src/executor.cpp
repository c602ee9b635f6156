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


#include "twinsym/executor.hpp"

#include <algorithm>

#include "twinsym/error.hpp"

namespace twinsym {

namespace {

constexpr std::pair<Event::Kind, std::string_view> kEventKinds[] = {
    {Event::Kind::InstrExec, "InstrExec"}, {Event::Kind::MemRead, "MemRead"},
    {Event::Kind::MemWrite, "MemWrite"},   {Event::Kind::RegWrite, "RegWrite"},
    {Event::Kind::IO, "IO"},
};

// Extends a model with zeros for variables it does not mention; those are
// unconstrained by the clauses the model was found for.
std::uint64_t eval_completed(Expr e, const Assignment& model) {
  Assignment a = model;
  for (const auto& [name, width] : free_vars(e)) a.emplace(name, 0);
  return eval(e, a);
}

}  // namespace

std::string_view event_kind_name(Event::Kind k) {
  for (const auto& [kind, name] : kEventKinds) {
    if (kind == k) return name;
  }
  return "?";
}

std::optional<Event::Kind> event_kind_from_name(std::string_view name) {
  for (const auto& [kind, n] : kEventKinds) {
    if (n == name) return kind;
  }
  return std::nullopt;
}

std::vector<NodeId> ExecTree::leaves() const {
  std::vector<NodeId> out;
  for (const TreeNode& n : nodes) {
    if (n.is_leaf() && !n.quarantined && n.status != Status::AssumeUnsat &&
        n.status != Status::Running) {
      out.push_back(n.id);
    }
  }
  return out;
}

std::vector<NodeId> ExecTree::quarantined() const {
  std::vector<NodeId> out;
  for (const TreeNode& n : nodes) {
    if (n.quarantined) out.push_back(n.id);
  }
  return out;
}

std::vector<NodeId> ExecTree::path(NodeId id) const {
  std::vector<NodeId> out;
  for (std::optional<NodeId> cur = id; cur; cur = nodes.at(*cur).parent) out.push_back(*cur);
  std::reverse(out.begin(), out.end());
  return out;
}

std::vector<ExprId> ExecTree::constraint_ids(NodeId id) const {
  std::vector<ExprId> out;
  for (NodeId n : path(id)) {
    const auto& d = nodes.at(n).delta;
    out.insert(out.end(), d.begin(), d.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ClauseSet path_constraints(const ExecTree& tree, const ExprPool& pool, NodeId id) {
  ClauseSet out;
  for (ExprId c : tree.constraint_ids(id)) out.insert(pool.get(c));
  return out;
}

Snapshot snapshot(const SymState& s, const Program& program) {
  Snapshot snap;
  for (std::size_t i = 0; i < s.regs.size(); ++i) snap.regs[program.registers[i].name] = s.regs[i]->id;
  for (const auto& [addr, e] : s.mem) snap.mem[addr] = e->id;
  return snap;
}

namespace {

Expr memory_value(ExprPool& pool, const Location& loc,
                  const std::function<Expr(std::uint32_t)>& byte_at) {
  Expr v = byte_at(loc.addr + loc.bytes - 1);
  for (std::uint32_t i = loc.bytes - 1; i-- > 0;) v = pool.concat(v, byte_at(loc.addr + i));
  return pool.simplify(v);
}

}  // namespace

Expr resolve_annotation(ExprPool& pool, const Snapshot& snap, const Annotation& a, Side side,
                        const Program& program) {
  const Location& loc = a.at[index(side)];
  if (loc.is_reg()) {
    auto it = snap.regs.find(*loc.reg);
    if (it == snap.regs.end()) {
      auto r = program.find_register(*loc.reg);
      if (!r) throw ValidationError("annotation " + a.display() + ": unknown register " + *loc.reg);
      return pool.constant(program.width_of(*r), 0);
    }
    return pool.get(it->second);
  }
  return memory_value(pool, loc, [&](std::uint32_t addr) {
    auto it = snap.mem.find(addr);
    return it == snap.mem.end() ? pool.constant(8, 0) : pool.get(it->second);
  });
}

Expr resolve_annotation(ExprPool& pool, const SymState& s, const Annotation& a, Side side,
                        const Program& program) {
  const Location& loc = a.at[index(side)];
  if (loc.is_reg()) {
    auto r = program.find_register(*loc.reg);
    if (!r) throw ValidationError("annotation " + a.display() + ": unknown register " + *loc.reg);
    return s.regs[*r];
  }
  return memory_value(pool, loc, [&](std::uint32_t addr) {
    auto it = s.mem.find(addr);
    return it == s.mem.end() ? pool.constant(8, 0) : it->second;
  });
}

Executor::Executor(ExprPool& pool, const Solver& solver, const Program& program,
                   const Harness& harness, Side side)
    : pool_(pool), solver_(solver), program_(program), harness_(harness), side_(side) {
  tree_.side = side;
}

NodeId Executor::new_node(NodeId parent, std::vector<ExprId> delta) {
  TreeNode n;
  n.id = static_cast<NodeId>(tree_.nodes.size());
  n.parent = parent;
  n.delta = std::move(delta);
  tree_.nodes[parent].children.push_back(n.id);
  tree_.nodes.push_back(std::move(n));
  return tree_.nodes.back().id;
}

void Executor::emit(const SymState& s, Event e) { tree_.nodes[s.node].events.push_back(std::move(e)); }

SolveResult Executor::query(const ClauseSet& clauses) {
  ++stats_.solver_queries;
  return solver_.is_sat(clauses, false);
}

SymState Executor::init_state() {
  tree_.nodes.clear();
  tree_.nodes.emplace_back();

  SymState s;
  s.regs.reserve(program_.registers.size());
  for (const Register& r : program_.registers) s.regs.push_back(pool_.constant(r.width, 0));
  s.visits.assign(program_.instructions.size(), 0);
  for (const auto& [sym, loc] : harness_.placements[index(side_)]) {
    auto w = harness_.symbol_width(sym);
    if (!w) throw ValidationError("placement of undeclared symbol " + sym);
    Expr v = pool_.var(sym, *w);
    if (loc.is_reg()) {
      auto r = program_.find_register(*loc.reg);
      if (!r || program_.width_of(*r) != *w) {
        throw ValidationError("placement of " + sym + ": register " + *loc.reg +
                              " is missing or has the wrong width");
      }
      s.regs[*r] = v;
      continue;
    }
    if (std::uint64_t{loc.addr} + *w / 8 > kAddressSpaceSize) {
      throw ValidationError("placement of " + sym + " lies outside the address space");
    }
    for (std::uint32_t i = 0; i < *w / 8; ++i) {
      if (!s.mem.emplace(loc.addr + i, value(pool_.extract(v, 8 * i + 7, 8 * i))).second) {
        throw ValidationError("placement of " + sym + " overlaps another placement");
      }
    }
  }

  bool contradiction = false;
  for (Expr a : compile_assumptions(pool_, harness_)) {
    if (a->is_const(1)) continue;
    if (a->is_const(0)) contradiction = true;
    if (s.constraints.insert(a)) tree_.nodes[0].delta.push_back(a->id);
  }
  if (contradiction) {
    s.status = tree_.nodes[0].status = Status::AssumeUnsat;
    return s;
  }
  if (!s.constraints.empty()) {
    SolveResult r = query(s.constraints);
    if (r.unsat()) {
      s.status = tree_.nodes[0].status = Status::AssumeUnsat;
    } else if (r.unknown()) {
      tree_.nodes[0].quarantined = true;
      s.status = Status::AssumeUnsat;  // not explored further
    } else {
      s.model = std::move(r.model);
    }
  }
  return s;
}

Expr Executor::operand(const SymState& s, const Instruction& inst, std::size_t i,
                       std::uint32_t width) {
  const Operand& o = inst.srcs[i];
  if (o.is_imm) return pool_.constant(width, static_cast<std::uint64_t>(o.imm) & width_mask(width));
  return s.regs[o.reg];
}

void Executor::write_reg(SymState& s, std::uint32_t reg, Expr v) {
  v = value(v);
  s.regs[reg] = v;
  emit(s, Event{Event::Kind::RegWrite, s.pc, 0, program_.registers[reg].name, v->id});
}

SymState Executor::finish(SymState s, Status status) {
  s.status = status;
  TreeNode& n = tree_.nodes[s.node];
  n.status = status;
  n.terminal = snapshot(s, program_);
  return s;
}

std::pair<std::optional<SymState>, std::optional<SymState>> Executor::split(const SymState& s,
                                                                            Expr cond,
                                                                            bool fork_unique) {
  cond = value(cond);
  if (cond->is_const()) {
    if (cond->value) return {s, std::nullopt};
    return {std::nullopt, s};
  }
  ++stats_.splits;
  Expr neg = value(pool_.bv_not(cond));
  const bool model_holds = eval_completed(cond, s.model) != 0;
  Expr known = model_holds ? cond : neg;
  Expr other = model_holds ? neg : cond;

  ClauseSet other_set = s.constraints;
  other_set.insert(other);
  SolveResult r = query(other_set);

  std::optional<SymState> known_state = s;
  std::optional<SymState> other_state;
  if (r.unsat()) {
    if (fork_unique) known_state->node = new_node(s.node, {});
  } else {
    // Children are created in (cond, not-cond) order for a stable tree.
    const bool cond_first = model_holds;
    auto make = [&](bool is_known) {
      SymState c = s;
      Expr clause = is_known ? known : other;
      c.constraints.insert(clause);
      c.node = new_node(s.node, {clause->id});
      if (!is_known) c.model = std::move(r.model);
      return c;
    };
    if (cond_first) {
      known_state = make(true);
      other_state = make(false);
    } else {
      other_state = make(false);
      known_state = make(true);
    }
    if (r.unknown()) {
      tree_.nodes[other_state->node].quarantined = true;
      other_state.reset();
    }
  }
  if (model_holds) return {known_state, other_state};
  return {other_state, known_state};
}

std::optional<std::uint64_t> Executor::concrete_address(const SymState& s,
                                                        const Instruction& inst) {
  std::uint64_t base = 0;
  if (inst.base) {
    Expr b = value(s.regs[*inst.base]);
    if (!b->is_const()) return std::nullopt;
    base = b->value;
  }
  return (base + static_cast<std::uint64_t>(inst.offset)) & 0xFFFFFFFFu;
}

std::vector<Expr> Executor::compile_assertions(const SymState& s) {
  NameResolver resolve = [&](std::string_view name) -> std::optional<Expr> {
    if (auto w = harness_.symbol_width(name)) return pool_.var(name, *w);
    if (const Annotation* a = harness_.find_annotation(name)) {
      return resolve_annotation(pool_, s, *a, side_, program_);
    }
    return std::nullopt;
  };
  std::vector<Expr> out;
  for (const std::string& text : harness_.assertions) {
    out.push_back(compile_constraint(pool_, text, resolve));
  }
  return out;
}

std::vector<SymState> Executor::step(SymState s) {
  std::vector<SymState> out;
  ++stats_.steps;

  auto halt = [&](SymState st) {
    std::vector<SymState> pending{std::move(st)};
    const std::size_t n = harness_.assertions.size();
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<SymState> next;
      for (SymState& p : pending) {
        Expr c = compile_assertions(p)[i];
        auto [pass, fail] = split(p, c, false);
        if (fail) out.push_back(finish(std::move(*fail), Status::AssertFailed));
        if (pass) next.push_back(std::move(*pass));
      }
      pending = std::move(next);
    }
    for (SymState& p : pending) out.push_back(finish(std::move(p), Status::Finished));
    return out;
  };

  if (s.pc >= program_.instructions.size()) return halt(std::move(s));
  if (++s.visits[s.pc] > harness_.loop_bound) {
    out.push_back(finish(std::move(s), Status::LoopBoundExceeded));
    return out;
  }
  const Instruction& inst = program_.instructions[s.pc];
  emit(s, Event{Event::Kind::InstrExec, s.pc, 0, {}, 0});
  const std::uint32_t dw =
      inst.dst < program_.registers.size() ? program_.width_of(inst.dst) : 0;
  std::uint32_t next_pc = s.pc + 1;

  auto advance = [&](SymState st, std::uint32_t pc) {
    st.pc = pc;
    out.push_back(std::move(st));
  };

  switch (inst.op) {
    case Opcode::Const:
      write_reg(s, inst.dst, pool_.constant(dw, static_cast<std::uint64_t>(inst.imm) & width_mask(dw)));
      break;
    case Opcode::Add:
    case Opcode::Sub:
    case Opcode::Mul: {
      Expr a = operand(s, inst, 0, dw);
      Expr b = operand(s, inst, 1, dw);
      const Op op = inst.op == Opcode::Add ? Op::Add : inst.op == Opcode::Sub ? Op::Sub : Op::Mul;
      Expr result = value(pool_.binary(op, a, b));
      if (program_.mode == OverflowMode::Trap) {
        // Unsigned overflow: the operation differs from its exact value in a
        // wider type. Products need twice the width to be exact.
        const std::uint32_t ew = op == Op::Mul ? 2 * dw : dw + 1;
        Expr exact = pool_.binary(op, pool_.zext(a, ew), pool_.zext(b, ew));
        Expr overflow = pool_.ne(exact, pool_.zext(result, ew));
        auto [bad, good] = split(s, overflow, false);
        if (bad) out.push_back(finish(std::move(*bad), Status::TrapOverflow));
        if (!good) return out;
        s = std::move(*good);
      }
      write_reg(s, inst.dst, result);
      break;
    }
    case Opcode::UDiv:
    case Opcode::URem: {
      Expr a = operand(s, inst, 0, dw);
      Expr b = operand(s, inst, 1, dw);
      auto [zero, nonzero] = split(s, pool_.eq(b, pool_.constant(dw, 0)), false);
      if (zero) out.push_back(finish(std::move(*zero), Status::DivByZero));
      if (!nonzero) return out;
      s = std::move(*nonzero);
      write_reg(s, inst.dst, pool_.binary(inst.op == Opcode::UDiv ? Op::UDiv : Op::URem, a, b));
      break;
    }
    case Opcode::And:
    case Opcode::Or:
    case Opcode::Xor:
    case Opcode::Shl:
    case Opcode::LShr:
    case Opcode::AShr: {
      static const std::pair<Opcode, Op> kOps[] = {{Opcode::And, Op::And}, {Opcode::Or, Op::Or},
                                                   {Opcode::Xor, Op::Xor}, {Opcode::Shl, Op::Shl},
                                                   {Opcode::LShr, Op::LShr}, {Opcode::AShr, Op::AShr}};
      Op op = Op::And;
      for (const auto& [from, to] : kOps) {
        if (from == inst.op) op = to;
      }
      write_reg(s, inst.dst, pool_.binary(op, operand(s, inst, 0, dw), operand(s, inst, 1, dw)));
      break;
    }
    case Opcode::Not:
      write_reg(s, inst.dst, pool_.bv_not(operand(s, inst, 0, dw)));
      break;
    case Opcode::CmpEq:
    case Opcode::CmpUlt:
    case Opcode::CmpSlt: {
      Expr a = s.regs[inst.srcs[0].reg];
      Expr b = operand(s, inst, 1, a->width);
      Expr r = inst.op == Opcode::CmpEq    ? pool_.eq(a, b)
               : inst.op == Opcode::CmpUlt ? pool_.ult(a, b)
                                           : pool_.slt(a, b);
      write_reg(s, inst.dst, dw > 1 ? pool_.zext(r, dw) : r);
      break;
    }
    case Opcode::Select: {
      Expr c = pool_.nonzero(s.regs[inst.srcs[0].reg]);
      write_reg(s, inst.dst, pool_.ite(c, operand(s, inst, 1, dw), operand(s, inst, 2, dw)));
      break;
    }
    case Opcode::Br: {
      auto [taken, fallthrough] = split(s, pool_.nonzero(s.regs[inst.srcs[0].reg]), true);
      if (taken) advance(std::move(*taken), inst.targets[0]);
      if (fallthrough) advance(std::move(*fallthrough), inst.targets[1]);
      return out;
    }
    case Opcode::Jmp:
      next_pc = inst.targets[0];
      break;
    case Opcode::Load:
    case Opcode::Store: {
      auto addr = concrete_address(s, inst);
      if (!addr) {
        out.push_back(finish(std::move(s), Status::SymbolicAddress));
        return out;
      }
      const std::uint32_t bytes = inst.mem_width / 8;
      if (*addr + bytes > kAddressSpaceSize) {
        out.push_back(finish(std::move(s), Status::OutOfBoundsMem));
        return out;
      }
      const auto base = static_cast<std::uint32_t>(*addr);
      if (inst.op == Opcode::Load) {
        Location loc{std::nullopt, base, bytes};
        Expr v = memory_value(pool_, loc, [&](std::uint32_t at) {
          auto it = s.mem.find(at);
          return it == s.mem.end() ? pool_.constant(8, 0) : it->second;
        });
        emit(s, Event{Event::Kind::MemRead, s.pc, base, {}, v->id});
        write_reg(s, inst.dst, v);
      } else {
        Expr v = s.regs[inst.srcs[0].reg];
        for (std::uint32_t i = 0; i < bytes; ++i) {
          s.mem[base + i] = value(pool_.extract(v, 8 * i + 7, 8 * i));
        }
        emit(s, Event{Event::Kind::MemWrite, s.pc, base, {}, v->id});
      }
      break;
    }
    case Opcode::Observe:
      emit(s, Event{Event::Kind::IO, s.pc, 0, {}, s.regs[inst.srcs[0].reg]->id});
      break;
    case Opcode::Assume: {
      Expr c = value(pool_.nonzero(s.regs[inst.srcs[0].reg]));
      if (c->is_const(1)) break;
      SymState child = s;
      child.constraints.insert(c);
      child.node = new_node(s.node, {c->id});
      bool feasible = !c->is_const(0);
      if (feasible && eval_completed(c, s.model) == 0) {
        SolveResult r = query(child.constraints);
        if (r.unknown()) {
          tree_.nodes[child.node].quarantined = true;
          return out;
        }
        feasible = r.sat();
        if (feasible) child.model = std::move(r.model);
      }
      if (!feasible) {
        child.status = tree_.nodes[child.node].status = Status::AssumeUnsat;
        out.push_back(std::move(child));
        return out;
      }
      s = std::move(child);
      break;
    }
    case Opcode::Assert: {
      auto [pass, fail] = split(s, pool_.nonzero(s.regs[inst.srcs[0].reg]), false);
      if (fail) out.push_back(finish(std::move(*fail), Status::AssertFailed));
      if (pass) advance(std::move(*pass), next_pc);
      return out;
    }
    case Opcode::Halt:
      return halt(std::move(s));
  }
  advance(std::move(s), next_pc);
  return out;
}

void Executor::run_all() {
  std::vector<SymState> stack;
  SymState root = init_state();
  if (root.status == Status::Running) stack.push_back(std::move(root));
  while (!stack.empty()) {
    SymState s = std::move(stack.back());
    stack.pop_back();
    std::vector<SymState> next = step(std::move(s));
    for (auto it = next.rbegin(); it != next.rend(); ++it) {
      if (it->status == Status::Running) stack.push_back(std::move(*it));
    }
  }
}

}  // namespace twinsym
