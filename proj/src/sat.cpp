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

#include "twinsym/sat.hpp"

#include <algorithm>
#include <cmath>

namespace twinsym::sat {
namespace {

double luby(double y, int x) {
  int size = 1;
  int seq = 0;
  while (size < x + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  while (size - 1 != x) {
    size = (size - 1) >> 1;
    --seq;
    x = x % size;
  }
  return std::pow(y, seq);
}

std::uint64_t splitmix(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

Solver::Solver(std::uint64_t seed) : rng_state_(seed) {}

Var Solver::new_var() {
  const Var v = num_vars();
  watches_.emplace_back();
  watches_.emplace_back();
  assigns_.push_back(kUndef);
  levels_.push_back(0);
  reasons_.push_back(kNoReason);
  polarity_.push_back(true);
  // With a nonzero seed, tiny activity offsets perturb the initial branching
  // order; with seed 0 the order is by variable index.
  activity_.push_back(rng_state_ == 0 ? 0.0
                                      : static_cast<double>(splitmix(rng_state_) % 1000) * 1e-9);
  seen_.push_back(0);
  heap_index_.push_back(-1);
  heap_insert(v);
  return v;
}

bool Solver::add_clause(std::vector<Lit> lits) {
  if (!ok_) return false;
  std::sort(lits.begin(), lits.end());
  std::vector<Lit> kept;
  for (std::size_t i = 0; i < lits.size(); ++i) {
    const Lit l = lits[i];
    if (!kept.empty() && kept.back() == l) continue;
    if (!kept.empty() && kept.back() == ~l) return true;  // tautology
    const std::uint8_t v = value(l);
    if (v == kTrue && level(l.var()) == 0) return true;
    if (v == kFalse && level(l.var()) == 0) continue;
    kept.push_back(l);
  }
  if (kept.empty()) {
    ok_ = false;
    return false;
  }
  if (kept.size() == 1) {
    enqueue(kept[0], kNoReason);
    ok_ = !propagate().has_value();
    return ok_;
  }
  clauses_.push_back(Clause{std::move(kept), false});
  attach(static_cast<CRef>(clauses_.size() - 1));
  return true;
}

void Solver::attach(CRef cr) {
  const auto& lits = clauses_[cr].lits;
  watches_[static_cast<std::size_t>(lits[0].x)].push_back({cr, lits[1]});
  watches_[static_cast<std::size_t>(lits[1].x)].push_back({cr, lits[0]});
}

void Solver::enqueue(Lit l, CRef reason) {
  const auto v = static_cast<std::size_t>(l.var());
  assigns_[v] = l.negated() ? kFalse : kTrue;
  levels_[v] = decision_level();
  reasons_[v] = reason;
  trail_.push_back(l);
}

std::optional<Solver::CRef> Solver::propagate() {
  while (qhead_ < trail_.size()) {
    const Lit p = trail_[qhead_++];
    const Lit false_lit = ~p;
    auto& ws = watches_[static_cast<std::size_t>(false_lit.x)];
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < ws.size()) {
      const Watcher w = ws[i];
      if (value(w.blocker) == kTrue) {
        ws[j++] = ws[i++];
        continue;
      }
      auto& lits = clauses_[w.cref].lits;
      if (lits[0] == false_lit) std::swap(lits[0], lits[1]);
      ++i;
      const Lit first = lits[0];
      if (first != w.blocker && value(first) == kTrue) {
        ws[j++] = {w.cref, first};
        continue;
      }
      bool moved = false;
      for (std::size_t k = 2; k < lits.size(); ++k) {
        if (value(lits[k]) != kFalse) {
          std::swap(lits[1], lits[k]);
          watches_[static_cast<std::size_t>(lits[1].x)].push_back({w.cref, first});
          moved = true;
          break;
        }
      }
      if (moved) continue;
      ws[j++] = {w.cref, first};
      if (value(first) == kFalse) {
        while (i < ws.size()) ws[j++] = ws[i++];
        ws.resize(j);
        qhead_ = trail_.size();
        return w.cref;
      }
      enqueue(first, w.cref);
    }
    ws.resize(j);
  }
  return std::nullopt;
}

void Solver::analyze(CRef confl, std::vector<Lit>& learnt, int& backtrack_level) {
  learnt.clear();
  learnt.push_back(Lit{});
  int path_count = 0;
  Lit p{};
  std::size_t index = trail_.size();
  do {
    const auto& lits = clauses_[confl].lits;
    for (std::size_t k = (p.x == -1 ? 0 : 1); k < lits.size(); ++k) {
      const Lit q = lits[k];
      const auto v = static_cast<std::size_t>(q.var());
      if (!seen_[v] && levels_[v] > 0) {
        seen_[v] = 1;
        bump(q.var());
        if (levels_[v] >= decision_level()) {
          ++path_count;
        } else {
          learnt.push_back(q);
        }
      }
    }
    do {
      --index;
    } while (!seen_[static_cast<std::size_t>(trail_[index].var())]);
    p = trail_[index];
    confl = reasons_[static_cast<std::size_t>(p.var())];
    seen_[static_cast<std::size_t>(p.var())] = 0;
    --path_count;
  } while (path_count > 0);
  learnt[0] = ~p;

  backtrack_level = 0;
  if (learnt.size() > 1) {
    std::size_t max_i = 1;
    for (std::size_t k = 2; k < learnt.size(); ++k) {
      if (level(learnt[k].var()) > level(learnt[max_i].var())) max_i = k;
    }
    std::swap(learnt[1], learnt[max_i]);
    backtrack_level = level(learnt[1].var());
  }
  for (std::size_t k = 1; k < learnt.size(); ++k) seen_[static_cast<std::size_t>(learnt[k].var())] = 0;
}

void Solver::analyze_final(Lit p) {
  // `p` is an assumption that is currently false.
  failed_.clear();
  failed_.push_back(p);
  if (decision_level() == 0) return;
  seen_[static_cast<std::size_t>(p.var())] = 1;
  for (std::size_t i = trail_.size(); i-- > trail_lim_[0];) {
    const auto v = static_cast<std::size_t>(trail_[i].var());
    if (!seen_[v]) continue;
    const CRef r = reasons_[v];
    if (r == kNoReason) {
      failed_.push_back(trail_[i]);  // a decision here is always an assumption
    } else {
      const auto& lits = clauses_[r].lits;
      for (std::size_t k = 1; k < lits.size(); ++k) {
        const auto u = static_cast<std::size_t>(lits[k].var());
        if (levels_[u] > 0) seen_[u] = 1;
      }
    }
    seen_[v] = 0;
  }
  seen_[static_cast<std::size_t>(p.var())] = 0;
}

void Solver::cancel_until(int lvl) {
  if (decision_level() <= lvl) return;
  for (std::size_t i = trail_.size(); i-- > trail_lim_[static_cast<std::size_t>(lvl)];) {
    const Var v = trail_[i].var();
    const auto vi = static_cast<std::size_t>(v);
    polarity_[vi] = trail_[i].negated();
    assigns_[vi] = kUndef;
    reasons_[vi] = kNoReason;
    if (heap_index_[vi] < 0) heap_insert(v);
  }
  trail_.resize(trail_lim_[static_cast<std::size_t>(lvl)]);
  trail_lim_.resize(static_cast<std::size_t>(lvl));
  qhead_ = trail_.size();
}

Lit Solver::pick_branch() {
  while (!heap_.empty()) {
    const Var v = heap_pop();
    if (assigns_[static_cast<std::size_t>(v)] == kUndef) {
      return Lit::make(v, polarity_[static_cast<std::size_t>(v)]);
    }
  }
  return Lit{};
}

void Solver::bump(Var v) {
  const auto vi = static_cast<std::size_t>(v);
  activity_[vi] += var_inc_;
  if (activity_[vi] > 1e100) {
    for (double& a : activity_) a *= 1e-100;
    var_inc_ *= 1e-100;
  }
  if (heap_index_[vi] >= 0) heap_up(static_cast<std::size_t>(heap_index_[vi]));
}

void Solver::heap_insert(Var v) {
  heap_index_[static_cast<std::size_t>(v)] = static_cast<int>(heap_.size());
  heap_.push_back(v);
  heap_up(heap_.size() - 1);
}

Var Solver::heap_pop() {
  const Var top = heap_[0];
  heap_index_[static_cast<std::size_t>(top)] = -1;
  const Var last = heap_.back();
  heap_.pop_back();
  if (!heap_.empty()) {
    heap_[0] = last;
    heap_index_[static_cast<std::size_t>(last)] = 0;
    heap_down(0);
  }
  return top;
}

void Solver::heap_up(std::size_t i) {
  const Var v = heap_[i];
  while (i > 0) {
    const std::size_t parent = (i - 1) / 2;
    if (!heap_less(v, heap_[parent])) break;
    heap_[i] = heap_[parent];
    heap_index_[static_cast<std::size_t>(heap_[i])] = static_cast<int>(i);
    i = parent;
  }
  heap_[i] = v;
  heap_index_[static_cast<std::size_t>(v)] = static_cast<int>(i);
}

void Solver::heap_down(std::size_t i) {
  const Var v = heap_[i];
  for (;;) {
    std::size_t child = 2 * i + 1;
    if (child >= heap_.size()) break;
    if (child + 1 < heap_.size() && heap_less(heap_[child + 1], heap_[child])) ++child;
    if (!heap_less(heap_[child], v)) break;
    heap_[i] = heap_[child];
    heap_index_[static_cast<std::size_t>(heap_[i])] = static_cast<int>(i);
    i = child;
  }
  heap_[i] = v;
  heap_index_[static_cast<std::size_t>(v)] = static_cast<int>(i);
}

Result Solver::solve(std::span<const Lit> assumptions, const Budget& budget) {
  failed_.clear();
  model_.clear();
  if (!ok_) return Result::Unsat;
  if (propagate().has_value()) {
    ok_ = false;
    return Result::Unsat;
  }

  const auto start = std::chrono::steady_clock::now();
  std::uint64_t conflicts = 0;
  int restart_round = 0;
  std::uint64_t restart_limit = static_cast<std::uint64_t>(luby(2.0, restart_round) * 100);
  std::uint64_t since_restart = 0;
  std::vector<Lit> learnt;

  for (;;) {
    if (auto confl = propagate()) {
      ++conflicts;
      ++total_conflicts_;
      ++since_restart;
      if (decision_level() == 0) {
        ok_ = false;
        return Result::Unsat;
      }
      int bt = 0;
      analyze(*confl, learnt, bt);
      cancel_until(bt);
      if (learnt.size() == 1) {
        enqueue(learnt[0], kNoReason);
      } else {
        clauses_.push_back(Clause{learnt, true});
        const auto cr = static_cast<CRef>(clauses_.size() - 1);
        attach(cr);
        enqueue(learnt[0], cr);
      }
      decay();
      if (conflicts >= budget.max_conflicts ||
          ((conflicts & 63) == 0 &&
           std::chrono::steady_clock::now() - start >= budget.max_time)) {
        cancel_until(0);
        return Result::Unknown;
      }
      if (since_restart >= restart_limit) {
        cancel_until(0);
        since_restart = 0;
        restart_limit = static_cast<std::uint64_t>(luby(2.0, ++restart_round) * 100);
      }
      continue;
    }

    Lit next{};
    while (static_cast<std::size_t>(decision_level()) < assumptions.size()) {
      const Lit a = assumptions[static_cast<std::size_t>(decision_level())];
      const std::uint8_t v = value(a);
      if (v == kTrue) {
        trail_lim_.push_back(trail_.size());  // empty level keeps indices aligned
      } else if (v == kFalse) {
        analyze_final(a);
        cancel_until(0);
        return Result::Unsat;
      } else {
        next = a;
        break;
      }
    }
    if (next.x == -1) {
      next = pick_branch();
      if (next.x == -1) {
        model_.assign(assigns_.size(), false);
        for (std::size_t v = 0; v < assigns_.size(); ++v) model_[v] = assigns_[v] == kTrue;
        cancel_until(0);
        return Result::Sat;
      }
    }
    trail_lim_.push_back(trail_.size());
    enqueue(next, kNoReason);
  }
}

}  // namespace twinsym::sat
