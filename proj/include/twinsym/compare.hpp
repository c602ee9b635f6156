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


// Cross-tree comparison: compatibility of terminal-state pairs with
// unsat-core memoization, per-pair semantic diffs, concretions and
// refinement.

#ifndef TWINSYM_COMPARE_HPP_
#define TWINSYM_COMPARE_HPP_

#include <atomic>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <utility>
#include <vector>

#include "twinsym/executor.hpp"
#include "twinsym/harness.hpp"
#include "twinsym/solver.hpp"

namespace twinsym {

/// Unsatisfiable clause-id sets, kept sorted by ascending size. A joint set
/// that includes any cached core is unsatisfiable without a solver call.
class CoreCache {
 public:
  explicit CoreCache(bool enabled = true) : enabled_(enabled) {}

  bool enabled() const { return enabled_; }
  /// True when some cached core is a subset of `sorted_ids`.
  bool covers(const std::vector<ExprId>& sorted_ids) const;
  /// Inserts a core unless a cached core is already a subset of it.
  /// Returns whether it was inserted.
  bool insert(std::vector<ExprId> core);
  std::vector<std::vector<ExprId>> cores() const;
  std::size_t size() const;

 private:
  bool enabled_;
  mutable std::shared_mutex mu_;
  std::vector<std::vector<ExprId>> cores_;
};

enum class Compat { Compatible, Incompatible, Unknown };

struct CompatStats {
  std::uint64_t pairs_checked = 0;
  std::uint64_t sat_queries_issued = 0;
  std::uint64_t cache_hits = 0;
  std::uint64_t cores_cached = 0;
  bool operator==(const CompatStats&) const = default;
};

using LeafPair = std::pair<NodeId, NodeId>;

struct CompatMatrix {
  std::set<LeafPair> pairs;
  std::set<LeafPair> unknown;
  CompatStats stats;
  bool operator==(const CompatMatrix&) const = default;
};

/// The two trees being compared together with the pool their ids refer to.
struct TreePair {
  ExprPool* pool = nullptr;
  const ExecTree* left = nullptr;
  const ExecTree* right = nullptr;
  const Program* left_program = nullptr;
  const Program* right_program = nullptr;

  const ExecTree& tree(Side s) const { return s == Side::Left ? *left : *right; }
  const Program& program(Side s) const { return s == Side::Left ? *left_program : *right_program; }
  ClauseSet joint(LeafPair p) const;
};

class Comparer {
 public:
  Comparer(TreePair trees, const Solver& solver, const Harness& harness, CoreCache& cache)
      : trees_(trees), solver_(solver), harness_(harness), cache_(cache) {}

  /// Joint satisfiability of the two leaves' constraints.
  Compat compatible(NodeId left, NodeId right);
  /// Every left leaf against every right leaf, spread over `workers` threads.
  /// The pair sets do not depend on the worker count or on the cache.
  CompatMatrix pair_all(unsigned workers = 1);

  CompatStats stats() const;

 private:
  TreePair trees_;
  const Solver& solver_;
  const Harness& harness_;
  CoreCache& cache_;
  std::atomic<std::uint64_t> pairs_checked_{0};
  std::atomic<std::uint64_t> queries_{0};
  std::atomic<std::uint64_t> hits_{0};
  std::atomic<std::uint64_t> cores_{0};
};

struct Concretion {
  Assignment inputs;  // harness symbols
  /// Per diff target: (left value, right value).
  std::map<std::string, std::pair<std::uint64_t, std::uint64_t>> values;
  bool operator==(const Concretion&) const = default;
};

enum class Verdict { ProvedEqual, Differs, Unknown };

std::string_view verdict_name(Verdict v);
std::optional<Verdict> verdict_from_name(std::string_view name);

struct TargetDiff {
  std::string name;
  Verdict verdict = Verdict::Unknown;
  ExprId left = 0;
  ExprId right = 0;
  std::vector<Concretion> concretions;
  bool partial = false;
  bool operator==(const TargetDiff&) const = default;
};

struct IoDiff {
  std::size_t left_length = 0;
  std::size_t right_length = 0;
  /// One verdict per aligned position.
  std::vector<Verdict> positions;
  Verdict verdict = Verdict::ProvedEqual;
  bool operator==(const IoDiff&) const = default;
};

struct DiffReport {
  std::vector<TargetDiff> targets;
  Status left_status = Status::Finished;
  Status right_status = Status::Finished;
  IoDiff io;
  /// Inputs illustrating a status or io difference, or shared inputs of an
  /// equal pair when requested.
  std::vector<Concretion> pair_concretions;
  bool pair_concretions_partial = false;

  bool status_differs() const { return left_status != right_status; }
  bool memory_differs(std::string_view target) const;
  bool any_memory_differs() const;
  /// Differences among the targets the harness asked for.
  bool differs(const DiffTargets& wanted) const;
  bool unknown(const DiffTargets& wanted) const;
  bool operator==(const DiffReport&) const = default;
};

enum class Refinement { Equivalent, LeftRefinesRight, RightRefinesLeft, Overlapping, Unknown };

std::string_view refinement_name(Refinement r);
std::optional<Refinement> refinement_from_name(std::string_view name);

struct RefinementVerdict {
  Refinement kind = Refinement::Unknown;
  std::optional<Assignment> left_only;   // model of A and not B
  std::optional<Assignment> right_only;  // model of B and not A
  bool operator==(const RefinementVerdict&) const = default;
};

/// Everything known about one compatible pair.
struct PairRecord {
  LeafPair pair;
  DiffReport diff;
  std::optional<RefinementVerdict> refinement;
  bool operator==(const PairRecord&) const = default;
};

/// Diffs one compatible pair over the harness targets, with k concretions
/// for each difference.
DiffReport diff_pair(const TreePair& trees, const Solver& solver, const Harness& h, LeafPair pair);

/// Up to k joint inputs of the pair; with `differ`, restricted to inputs on
/// which the target values differ. Values of every diff target are recorded.
std::vector<Concretion> concretize(const TreePair& trees, const Solver& solver, const Harness& h,
                                   LeafPair pair, const std::vector<std::string>& targets,
                                   std::size_t k, Expr differ = nullptr, bool* partial = nullptr);

RefinementVerdict refinement(const TreePair& trees, const Solver& solver, LeafPair pair);

}  // namespace twinsym

#endif  // TWINSYM_COMPARE_HPP_
