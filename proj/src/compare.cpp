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


#include "twinsym/compare.hpp"

#include <algorithm>
#include <mutex>
#include <thread>

#include "twinsym/error.hpp"

namespace twinsym {

namespace {

constexpr std::pair<Verdict, std::string_view> kVerdicts[] = {
    {Verdict::ProvedEqual, "ProvedEqual"}, {Verdict::Differs, "Differs"}, {Verdict::Unknown, "Unknown"}};

constexpr std::pair<Refinement, std::string_view> kRefinements[] = {
    {Refinement::Equivalent, "Equivalent"},
    {Refinement::LeftRefinesRight, "LeftRefinesRight"},
    {Refinement::RightRefinesLeft, "RightRefinesLeft"},
    {Refinement::Overlapping, "Overlapping"},
    {Refinement::Unknown, "Unknown"},
};

bool subset(const std::vector<ExprId>& small, const std::vector<ExprId>& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

std::vector<ExprId> merged_ids(const TreePair& t, LeafPair p) {
  std::vector<ExprId> a = t.left->constraint_ids(p.first);
  std::vector<ExprId> b = t.right->constraint_ids(p.second);
  std::vector<ExprId> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::uint64_t eval_completed(Expr e, const Assignment& a) {
  Assignment full = a;
  for (const auto& [name, w] : free_vars(e)) full.emplace(name, 0);
  return eval(e, full);
}

std::vector<Expr> io_stream(const TreePair& t, Side side, NodeId leaf) {
  const ExecTree& tree = t.tree(side);
  std::vector<Expr> out;
  for (NodeId n : tree.path(leaf)) {
    for (const Event& e : tree.node(n).events) {
      if (e.kind == Event::Kind::IO) out.push_back(t.pool->get(e.value));
    }
  }
  return out;
}

std::pair<Expr, Expr> target_exprs(const TreePair& t, const Harness& h, LeafPair pair,
                                   const std::string& name) {
  const Annotation* a = h.find_annotation(name);
  if (!a) throw ValidationError("unknown diff target " + name);
  const TreeNode& l = t.left->node(pair.first);
  const TreeNode& r = t.right->node(pair.second);
  if (!l.terminal || !r.terminal) throw Error("diff target on a non-terminal node");
  return {resolve_annotation(*t.pool, *l.terminal, *a, Side::Left, *t.left_program),
          resolve_annotation(*t.pool, *r.terminal, *a, Side::Right, *t.right_program)};
}

}  // namespace

std::string_view verdict_name(Verdict v) {
  for (const auto& [k, n] : kVerdicts) {
    if (k == v) return n;
  }
  return "?";
}

std::optional<Verdict> verdict_from_name(std::string_view name) {
  for (const auto& [k, n] : kVerdicts) {
    if (n == name) return k;
  }
  return std::nullopt;
}

std::string_view refinement_name(Refinement r) {
  for (const auto& [k, n] : kRefinements) {
    if (k == r) return n;
  }
  return "?";
}

std::optional<Refinement> refinement_from_name(std::string_view name) {
  for (const auto& [k, n] : kRefinements) {
    if (n == name) return k;
  }
  return std::nullopt;
}

bool CoreCache::covers(const std::vector<ExprId>& sorted_ids) const {
  if (!enabled_) return false;
  std::shared_lock lock(mu_);
  for (const auto& core : cores_) {
    if (core.size() > sorted_ids.size()) break;
    if (subset(core, sorted_ids)) return true;
  }
  return false;
}

bool CoreCache::insert(std::vector<ExprId> core) {
  if (!enabled_) return false;
  std::sort(core.begin(), core.end());
  core.erase(std::unique(core.begin(), core.end()), core.end());
  std::unique_lock lock(mu_);
  for (const auto& c : cores_) {
    if (c.size() > core.size()) break;
    if (subset(c, core)) return false;
  }
  auto pos = std::upper_bound(cores_.begin(), cores_.end(), core,
                              [](const auto& a, const auto& b) { return a.size() < b.size(); });
  cores_.insert(pos, std::move(core));
  return true;
}

std::vector<std::vector<ExprId>> CoreCache::cores() const {
  std::shared_lock lock(mu_);
  return cores_;
}

std::size_t CoreCache::size() const {
  std::shared_lock lock(mu_);
  return cores_.size();
}

ClauseSet TreePair::joint(LeafPair p) const {
  ClauseSet out;
  for (ExprId id : merged_ids(*this, p)) out.insert(pool->get(id));
  return out;
}

Compat Comparer::compatible(NodeId left, NodeId right) {
  ++pairs_checked_;
  const std::vector<ExprId> ids = merged_ids(trees_, {left, right});
  if (cache_.covers(ids)) {
    ++hits_;
    return Compat::Incompatible;
  }
  ClauseSet joint;
  for (ExprId id : ids) joint.insert(trees_.pool->get(id));
  ++queries_;
  SolveResult r = solver_.is_sat(joint, cache_.enabled());
  if (r.sat()) return Compat::Compatible;
  if (r.unknown()) return Compat::Unknown;
  if (cache_.enabled()) {
    std::vector<ExprId> core;
    for (Expr c : r.core) core.push_back(c->id);
    if (cache_.insert(std::move(core))) ++cores_;
  }
  return Compat::Incompatible;
}

CompatMatrix Comparer::pair_all(unsigned workers) {
  const std::vector<NodeId> ls = trees_.left->leaves();
  const std::vector<NodeId> rs = trees_.right->leaves();
  std::vector<LeafPair> all;
  for (NodeId l : ls) {
    for (NodeId r : rs) all.emplace_back(l, r);
  }
  std::vector<Compat> result(all.size(), Compat::Unknown);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < all.size(); i = next++) {
      result[i] = compatible(all[i].first, all[i].second);
    }
  };
  workers = std::max(1u, workers);
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }
  CompatMatrix m;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (result[i] == Compat::Compatible) m.pairs.insert(all[i]);
    if (result[i] == Compat::Unknown) m.unknown.insert(all[i]);
  }
  m.stats = stats();
  return m;
}

CompatStats Comparer::stats() const {
  return CompatStats{pairs_checked_.load(), queries_.load(), hits_.load(), cores_.load()};
}

bool DiffReport::memory_differs(std::string_view target) const {
  for (const TargetDiff& t : targets) {
    if (t.name == target) return t.verdict == Verdict::Differs;
  }
  return false;
}

bool DiffReport::any_memory_differs() const {
  return std::any_of(targets.begin(), targets.end(),
                     [](const TargetDiff& t) { return t.verdict == Verdict::Differs; });
}

bool DiffReport::differs(const DiffTargets& wanted) const {
  return any_memory_differs() || (wanted.status && status_differs()) ||
         (wanted.io && io.verdict == Verdict::Differs);
}

bool DiffReport::unknown(const DiffTargets& wanted) const {
  return std::any_of(targets.begin(), targets.end(),
                     [](const TargetDiff& t) { return t.verdict == Verdict::Unknown; }) ||
         (wanted.io && io.verdict == Verdict::Unknown) || pair_concretions_partial ||
         std::any_of(targets.begin(), targets.end(), [](const TargetDiff& t) { return t.partial; });
}

std::vector<Concretion> concretize(const TreePair& trees, const Solver& solver, const Harness& h,
                                   LeafPair pair, const std::vector<std::string>& targets,
                                   std::size_t k, Expr differ, bool* partial) {
  ClauseSet clauses = trees.joint(pair);
  if (differ) clauses.insert(trees.pool->simplify(differ));
  std::vector<Concretion> out;
  for (Expr c : clauses) {
    if (c->is_const(0)) return out;
  }
  ModelEnumeration models = enumerate_models(solver, *trees.pool, clauses, h.symbols, k);
  if (partial) *partial = models.partial;
  std::vector<std::pair<std::string, std::pair<Expr, Expr>>> exprs;
  for (const std::string& name : targets) exprs.emplace_back(name, target_exprs(trees, h, pair, name));
  for (const Assignment& m : models.models) {
    Concretion c;
    for (const auto& [name, w] : h.symbols) c.inputs[name] = m.count(name) ? m.at(name) : 0;
    for (const auto& [name, e] : exprs) {
      c.values[name] = {eval_completed(e.first, c.inputs), eval_completed(e.second, c.inputs)};
    }
    out.push_back(std::move(c));
  }
  return out;
}

DiffReport diff_pair(const TreePair& trees, const Solver& solver, const Harness& h, LeafPair pair) {
  ExprPool& pool = *trees.pool;
  const ClauseSet joint = trees.joint(pair);
  DiffReport d;
  d.left_status = trees.left->node(pair.first).status;
  d.right_status = trees.right->node(pair.second).status;
  const std::vector<std::string>& names = h.diff.annotations;

  for (const std::string& name : names) {
    auto [a, b] = target_exprs(trees, h, pair, name);
    TargetDiff t;
    t.name = name;
    t.left = a->id;
    t.right = b->id;
    EqualityResult eq = check_equal(solver, pool, joint, a, b);
    if (eq.kind == EqualityResult::Kind::ProvedEqual) {
      t.verdict = Verdict::ProvedEqual;
    } else if (eq.kind == EqualityResult::Kind::Unknown) {
      t.verdict = Verdict::Unknown;
    } else {
      t.verdict = Verdict::Differs;
      t.concretions = concretize(trees, solver, h, pair, names, h.concretions, pool.ne(a, b), &t.partial);
    }
    d.targets.push_back(std::move(t));
  }

  const std::vector<Expr> lio = io_stream(trees, Side::Left, pair.first);
  const std::vector<Expr> rio = io_stream(trees, Side::Right, pair.second);
  d.io.left_length = lio.size();
  d.io.right_length = rio.size();
  Expr first_io_difference = nullptr;
  for (std::size_t i = 0; i < std::min(lio.size(), rio.size()); ++i) {
    Expr a = lio[i];
    Expr b = rio[i];
    if (a->width != b->width) {
      const std::uint32_t w = std::max(a->width, b->width);
      a = pool.simplify(pool.zext(a, w));
      b = pool.simplify(pool.zext(b, w));
    }
    EqualityResult eq = check_equal(solver, pool, joint, a, b);
    Verdict v = eq.kind == EqualityResult::Kind::ProvedEqual ? Verdict::ProvedEqual
                : eq.kind == EqualityResult::Kind::Differs    ? Verdict::Differs
                                                              : Verdict::Unknown;
    if (v == Verdict::Differs && !first_io_difference) first_io_difference = pool.ne(a, b);
    d.io.positions.push_back(v);
  }
  if (lio.size() != rio.size() ||
      std::count(d.io.positions.begin(), d.io.positions.end(), Verdict::Differs) > 0) {
    d.io.verdict = Verdict::Differs;
  } else if (std::count(d.io.positions.begin(), d.io.positions.end(), Verdict::Unknown) > 0) {
    d.io.verdict = Verdict::Unknown;
  }

  const std::size_t k = h.concretions;
  const bool io_length = h.diff.io && lio.size() != rio.size();
  if ((h.diff.status && d.status_differs()) || io_length) {
    d.pair_concretions = concretize(trees, solver, h, pair, names, k, nullptr, &d.pair_concretions_partial);
  } else if (h.diff.io && first_io_difference) {
    d.pair_concretions =
        concretize(trees, solver, h, pair, names, k, first_io_difference, &d.pair_concretions_partial);
  } else if (h.diff.concretize_equal && !d.differs(h.diff)) {
    d.pair_concretions = concretize(trees, solver, h, pair, names, k, nullptr, &d.pair_concretions_partial);
  }
  return d;
}

RefinementVerdict refinement(const TreePair& trees, const Solver& solver, LeafPair pair) {
  ExprPool& pool = *trees.pool;
  const ClauseSet a = path_constraints(*trees.left, pool, pair.first);
  const ClauseSet b = path_constraints(*trees.right, pool, pair.second);
  auto outside = [&](const ClauseSet& in, const ClauseSet& not_in) -> SolveResult {
    ClauseSet q = in;
    Expr excluded = pool.simplify(pool.bv_not(pool.conjunction(not_in.clauses())));
    if (excluded->is_const(0)) return SolveResult{SolveResult::Kind::Unsat, {}, {}};
    q.insert(excluded);
    return solver.is_sat(q, false);
  };
  SolveResult left_only = outside(a, b);
  SolveResult right_only = outside(b, a);
  RefinementVerdict v;
  if (left_only.unknown() || right_only.unknown()) return v;
  if (left_only.sat()) v.left_only = left_only.model;
  if (right_only.sat()) v.right_only = right_only.model;
  if (left_only.unsat() && right_only.unsat()) v.kind = Refinement::Equivalent;
  else if (left_only.unsat()) v.kind = Refinement::LeftRefinesRight;
  else if (right_only.unsat()) v.kind = Refinement::RightRefinesLeft;
  else v.kind = Refinement::Overlapping;
  return v;
}

}  // namespace twinsym
