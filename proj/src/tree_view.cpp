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


#include "twinsym/tree_view.hpp"

#include <functional>

#include "twinsym/error.hpp"

namespace twinsym {

namespace {

constexpr std::pair<Category, std::string_view> kCategories[] = {
    {Category::ErrorState, "ErrorState"},
    {Category::ModeledCall, "ModeledCall"},
    {Category::LoopBoundExceeded, "LoopBoundExceeded"},
    {Category::AssertionFailed, "AssertionFailed"},
};

// Marks `leaf` and all its ancestors.
void mark_path(const ExecTree& tree, NodeId leaf, std::set<NodeId>& out) {
  for (NodeId n : tree.path(leaf)) out.insert(n);
}

}  // namespace

std::string_view category_name(Category c) {
  for (const auto& [k, n] : kCategories) {
    if (k == c) return n;
  }
  return "?";
}

std::optional<Category> category_from_name(std::string_view name) {
  for (const auto& [k, n] : kCategories) {
    if (n == name) return k;
  }
  return std::nullopt;
}

HighlightMap highlight(const ExecTree& tree) {
  HighlightMap out;
  for (const TreeNode& n : tree.nodes) {
    std::set<Category> cats;
    switch (n.status) {
      case Status::TrapOverflow:
      case Status::DivByZero:
      case Status::OutOfBoundsMem:
      case Status::SymbolicAddress:
        cats.insert(Category::ErrorState);
        break;
      case Status::LoopBoundExceeded:
        cats.insert(Category::LoopBoundExceeded);
        break;
      case Status::AssertFailed:
        cats.insert(Category::AssertionFailed);
        break;
      default:
        break;
    }
    for (const Event& e : n.events) {
      if (e.kind == Event::Kind::IO) cats.insert(Category::ModeledCall);
    }
    if (!cats.empty()) out[n.id] = std::move(cats);
  }
  return out;
}

PruneRelation PruneRelation::parse(std::string_view text) {
  PruneRelation r;
  if (text == "AnyDiff") {
    r.kind = Kind::AnyDiff;
  } else if (text == "StatusDiffers") {
    r.kind = Kind::StatusDiffers;
  } else if (text == "IoDiffers") {
    r.kind = Kind::IoDiffers;
  } else if (text.starts_with("MemoryDiffers(") && text.ends_with(")") && text.size() > 15) {
    r.kind = Kind::MemoryDiffers;
    r.annotation = std::string(text.substr(14, text.size() - 15));
  } else {
    throw ValidationError("unknown prune relation '" + std::string(text) +
                          "'; expected AnyDiff, StatusDiffers, IoDiffers or MemoryDiffers(name)");
  }
  return r;
}

std::string PruneRelation::to_string() const {
  switch (kind) {
    case Kind::AnyDiff:
      return "AnyDiff";
    case Kind::StatusDiffers:
      return "StatusDiffers";
    case Kind::IoDiffers:
      return "IoDiffers";
    case Kind::MemoryDiffers:
      return "MemoryDiffers(" + annotation + ")";
  }
  return "?";
}

bool PruneRelation::holds(const DiffReport& d) const {
  switch (kind) {
    case Kind::AnyDiff:
      return d.any_memory_differs() || d.status_differs() || d.io.verdict == Verdict::Differs;
    case Kind::StatusDiffers:
      return d.status_differs();
    case Kind::IoDiffers:
      return d.io.verdict == Verdict::Differs;
    case Kind::MemoryDiffers:
      return d.memory_differs(annotation);
  }
  return false;
}

VisibleNodes prune(const ExecTree& left, const ExecTree& right, const CompatMatrix& matrix,
                   const std::vector<PairRecord>& pairs, const std::vector<PruneRelation>& spec) {
  if (spec.empty()) throw ValidationError("prune needs at least one relation");
  std::map<LeafPair, const DiffReport*> diffs;
  for (const PairRecord& p : pairs) diffs[p.pair] = &p.diff;
  VisibleNodes out;
  for (const LeafPair& pair : matrix.pairs) {
    auto it = diffs.find(pair);
    if (it == diffs.end()) {
      throw Error("prune: no diff for compatible pair (" + std::to_string(pair.first) + ", " +
                  std::to_string(pair.second) + ")");
    }
    for (const PruneRelation& rel : spec) {
      if (rel.kind == PruneRelation::Kind::MemoryDiffers) {
        const auto& targets = it->second->targets;
        if (std::none_of(targets.begin(), targets.end(),
                         [&](const TargetDiff& t) { return t.name == rel.annotation; })) {
          throw Error("prune: annotation " + rel.annotation + " was not diffed");
        }
      }
    }
    const bool related = std::any_of(spec.begin(), spec.end(),
                                     [&](const PruneRelation& r) { return r.holds(*it->second); });
    if (!related) continue;
    // Both members of a related pair survive together.
    mark_path(left, pair.first, out.left);
    mark_path(right, pair.second, out.right);
  }
  return out;
}

VisibleNodes all_nodes(const ExecTree& left, const ExecTree& right) {
  VisibleNodes out;
  for (const TreeNode& n : left.nodes) out.left.insert(n.id);
  for (const TreeNode& n : right.nodes) out.right.insert(n.id);
  return out;
}

CompressedTree compress(const ExecTree& tree, int level) {
  if (level < 0 || level > 2) throw ValidationError("compression level must be 0, 1 or 2");
  CompressedTree out;
  out.level = level;
  if (tree.nodes.empty()) return out;
  auto folds = [&](const TreeNode& n) {
    if (level == 0 || !n.parent) return false;
    const TreeNode& p = tree.node(*n.parent);
    return p.children.size() == 1 && (level == 2 || n.delta.empty());
  };
  std::function<std::uint32_t(NodeId, std::optional<std::uint32_t>)> build =
      [&](NodeId start, std::optional<std::uint32_t> parent) {
        const auto gid = static_cast<std::uint32_t>(out.nodes.size());
        out.nodes.push_back(CompressedNode{gid, parent, {}, {}, {}});
        NodeId cur = start;
        while (true) {
          const TreeNode& n = tree.node(cur);
          out.nodes[gid].members.push_back(cur);
          out.nodes[gid].delta.insert(out.nodes[gid].delta.end(), n.delta.begin(), n.delta.end());
          if (n.children.size() == 1 && folds(tree.node(n.children[0]))) {
            cur = n.children[0];
            continue;
          }
          for (NodeId c : n.children) {
            const std::uint32_t child = build(c, gid);
            out.nodes[gid].children.push_back(child);
          }
          return gid;
        }
      };
  build(0, std::nullopt);
  return out;
}

}  // namespace twinsym
