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


// Presentation-level views of execution trees: highlight categories,
// pruning against the facing tree and node compression. Everything here is
// a pure function of data stored in a session document.

#ifndef TWINSYM_TREE_VIEW_HPP_
#define TWINSYM_TREE_VIEW_HPP_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "twinsym/compare.hpp"
#include "twinsym/executor.hpp"

namespace twinsym {

enum class Category { ErrorState, ModeledCall, LoopBoundExceeded, AssertionFailed };

std::string_view category_name(Category c);
std::optional<Category> category_from_name(std::string_view name);

using HighlightMap = std::map<NodeId, std::set<Category>>;

/// Categories per node; nodes without any are absent.
HighlightMap highlight(const ExecTree& tree);

struct PruneRelation {
  enum class Kind { MemoryDiffers, StatusDiffers, IoDiffers, AnyDiff };
  Kind kind = Kind::AnyDiff;
  std::string annotation;  // MemoryDiffers only

  /// `AnyDiff`, `StatusDiffers`, `IoDiffers` or `MemoryDiffers(name)`.
  static PruneRelation parse(std::string_view text);
  std::string to_string() const;
  bool holds(const DiffReport& d) const;
  bool operator==(const PruneRelation&) const = default;
};

struct VisibleNodes {
  std::set<NodeId> left;
  std::set<NodeId> right;
  bool operator==(const VisibleNodes&) const = default;
};

/// A leaf survives when some compatible facing leaf is related to it by a
/// relation in `spec`; an inner node survives when a descendant leaf does.
/// Throws Error when a compatible pair has no diff, or when a relation names
/// an annotation that was not diffed.
VisibleNodes prune(const ExecTree& left, const ExecTree& right, const CompatMatrix& matrix,
                   const std::vector<PairRecord>& pairs, const std::vector<PruneRelation>& spec);

/// Every node of both trees.
VisibleNodes all_nodes(const ExecTree& left, const ExecTree& right);

struct CompressedNode {
  std::uint32_t id = 0;
  std::optional<std::uint32_t> parent;
  std::vector<std::uint32_t> children;
  std::vector<NodeId> members;  // original ids, root first
  std::vector<ExprId> delta;    // members' deltas in order
  bool operator==(const CompressedNode&) const = default;
};

struct CompressedTree {
  int level = 0;
  std::vector<CompressedNode> nodes;  // nodes[0] holds the original root
  bool operator==(const CompressedTree&) const = default;
};

/// Level 0 copies the tree. Level 1 folds a unique child with an empty delta
/// into its parent. Level 2 folds every unique child into its parent.
CompressedTree compress(const ExecTree& tree, int level);

}  // namespace twinsym

#endif  // TWINSYM_TREE_VIEW_HPP_
