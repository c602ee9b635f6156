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


// Independent checks of the tree views: compression keeps leaves and
// constraint unions, pruning never leaves a branch without its partner.

#ifndef TWINSYM_TESTS_SUPPORT_VIEW_ORACLE_HPP_
#define TWINSYM_TESTS_SUPPORT_VIEW_ORACLE_HPP_

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "twinsym/session.hpp"
#include "twinsym/tree_view.hpp"

namespace twinsym::testing {

/// Empty when `c` keeps every leaf of `t` once and each leaf's compressed
/// path carries exactly the constraints of its original path.
inline std::vector<std::string> check_compression(const ExecTree& t, const CompressedTree& c) {
  std::vector<std::string> failures;
  std::vector<NodeId> original;
  for (const TreeNode& n : t.nodes) {
    if (n.is_leaf()) original.push_back(n.id);
  }
  std::vector<NodeId> kept;
  std::size_t members = 0;
  for (const CompressedNode& g : c.nodes) {
    members += g.members.size();
    if (!g.children.empty()) continue;
    const NodeId last = g.members.back();
    if (!t.node(last).is_leaf()) {
      failures.push_back("compressed leaf " + std::to_string(g.id) + " ends in inner node " +
                         std::to_string(last));
      continue;
    }
    kept.push_back(last);
    std::set<ExprId> along;
    for (std::optional<std::uint32_t> at = g.id; at; at = c.nodes[*at].parent) {
      along.insert(c.nodes[*at].delta.begin(), c.nodes[*at].delta.end());
    }
    const std::vector<ExprId> ids = t.constraint_ids(last);
    if (along != std::set<ExprId>(ids.begin(), ids.end())) {
      failures.push_back("leaf " + std::to_string(last) + " changes its constraint union");
    }
  }
  std::sort(kept.begin(), kept.end());
  if (kept != original) failures.push_back("leaf multiset changed");
  if (members != t.nodes.size()) failures.push_back("node membership is not a partition");
  return failures;
}

/// Empty when every visible leaf has a related compatible partner that is
/// also visible and every visible inner node has a visible leaf below it.
inline std::vector<std::string> check_prune_symmetry(const SessionDoc& doc, const VisibleNodes& v,
                                                     const std::vector<PruneRelation>& spec) {
  std::vector<std::string> failures;
  auto related = [&](const PairRecord& p) {
    return std::any_of(spec.begin(), spec.end(), [&](const PruneRelation& r) { return r.holds(p.diff); });
  };
  for (Side side : {Side::Left, Side::Right}) {
    const ExecTree& t = doc.trees[index(side)];
    const std::set<NodeId>& mine = side == Side::Left ? v.left : v.right;
    const std::set<NodeId>& theirs = side == Side::Left ? v.right : v.left;
    std::set<NodeId> above_leaves;
    for (NodeId leaf : mine) {
      if (!t.node(leaf).is_leaf()) continue;
      for (NodeId n : t.path(leaf)) above_leaves.insert(n);
      bool partner = false;
      for (const PairRecord& p : doc.pairs) {
        const NodeId me = side == Side::Left ? p.pair.first : p.pair.second;
        const NodeId other = side == Side::Left ? p.pair.second : p.pair.first;
        if (me == leaf && related(p) && theirs.count(other)) partner = true;
      }
      if (!partner) failures.push_back(std::string(side_name(side)) + " leaf " + std::to_string(leaf) + " survives alone");
    }
    for (NodeId n : mine) {
      if (!above_leaves.count(n)) failures.push_back(std::string(side_name(side)) + " node " + std::to_string(n) + " is orphaned");
    }
  }
  return failures;
}

/// The prune specs exercised on a session: every relation kind, each diffed
/// annotation alone and combined with StatusDiffers.
inline std::vector<std::vector<PruneRelation>> prune_specs(const SessionDoc& doc) {
  std::vector<std::vector<PruneRelation>> specs = {
      {PruneRelation::parse("AnyDiff")}, {PruneRelation::parse("StatusDiffers")}, {PruneRelation::parse("IoDiffers")}};
  for (const std::string& t : doc.harness.diff.annotations) {
    specs.push_back({PruneRelation::parse("MemoryDiffers(" + t + ")")});
    specs.push_back({PruneRelation::parse("MemoryDiffers(" + t + ")"), PruneRelation::parse("StatusDiffers")});
  }
  return specs;
}

}  // namespace twinsym::testing

#endif  // TWINSYM_TESTS_SUPPORT_VIEW_ORACLE_HPP_
