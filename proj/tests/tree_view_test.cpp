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

#include <gtest/gtest.h>

#include <algorithm>

#include "support/fixture.hpp"
#include "support/view_oracle.hpp"
#include "twinsym/error.hpp"

namespace twinsym {
namespace {

using testing::corpus_session;

Harness one_symbol() {
  return parse_harness(R"({"left": "l.ir", "right": "r.ir",
    "symbols": [{"name": "x", "width": 8}],
    "placements": {"left": {"x": {"reg": "x"}}, "right": {"x": {"reg": "x"}}}})");
}

// A tree from (parent, delta) entries; entry i becomes node i + 1 under the
// root. Delta values stand in for expression ids.
ExecTree shaped(const std::vector<std::pair<NodeId, std::vector<ExprId>>>& nodes) {
  ExecTree t;
  t.nodes.push_back(TreeNode{});
  for (const auto& [parent, delta] : nodes) {
    TreeNode n;
    n.id = static_cast<NodeId>(t.nodes.size());
    n.parent = parent;
    n.delta = delta;
    t.nodes[parent].children.push_back(n.id);
    t.nodes.push_back(std::move(n));
  }
  for (TreeNode& n : t.nodes) {
    if (n.children.empty()) n.status = Status::Finished;
  }
  return t;
}

TEST(HighlightTest, DivisionByZeroLeafIsAnErrorStateOnly) {
  testing::LiveAnalysis a(one_symbol(), "reg x:8, q:8\n const q, 100\n udiv q, q, x\n halt\n",
                          "reg x:8\n halt\n");
  const ExecTree& t = a.trees[0];
  const HighlightMap m = highlight(t);
  std::size_t errors = 0;
  for (NodeId leaf : t.leaves()) {
    if (t.node(leaf).status == Status::DivByZero) {
      ++errors;
      EXPECT_EQ(m.at(leaf), std::set<Category>{Category::ErrorState});
    } else {
      EXPECT_FALSE(m.count(leaf));
    }
  }
  EXPECT_EQ(errors, 1u);
}

TEST(HighlightTest, ObserveMarksModeledCall) {
  testing::LiveAnalysis a(one_symbol(), "reg x:8\n observe x\n halt\n", "reg x:8\n halt\n");
  const HighlightMap m = highlight(a.trees[0]);
  ASSERT_EQ(m.size(), 1u);
  EXPECT_EQ(m.begin()->second, std::set<Category>{Category::ModeledCall});
  EXPECT_TRUE(highlight(a.trees[1]).empty());
}

TEST(HighlightTest, LoopBoundAndAssertion) {
  Harness h = parse_harness(R"({"left": "l.ir", "right": "r.ir",
    "symbols": [{"name": "x", "width": 8}],
    "placements": {"left": {"x": {"reg": "x"}}, "right": {"x": {"reg": "x"}}},
    "loop_bound": 3})");
  testing::LiveAnalysis a(h, "reg x:8\nloop:\n jmp loop\n", "reg x:8, c:1\n cmp_ult c, x, 9\n assert c\n halt\n");
  const HighlightMap l = highlight(a.trees[0]);
  ASSERT_EQ(a.trees[0].leaves().size(), 1u);
  EXPECT_EQ(l.at(a.trees[0].leaves()[0]), std::set<Category>{Category::LoopBoundExceeded});
  bool failed = false;
  for (const auto& [id, cats] : highlight(a.trees[1])) {
    failed |= cats.count(Category::AssertionFailed) > 0;
  }
  EXPECT_TRUE(failed);
}

TEST(HighlightTest, AllFinishedTreeHasEmptyMap) {
  EXPECT_TRUE(corpus_session("sort_equal.json").highlights[0].empty());
  EXPECT_TRUE(highlight(corpus_session("sort_equal.json").trees[1]).empty());
}

TEST(HighlightTest, CategoryNamesRoundTrip) {
  for (Category c : {Category::ErrorState, Category::ModeledCall, Category::LoopBoundExceeded,
                     Category::AssertionFailed}) {
    EXPECT_EQ(category_from_name(category_name(c)), c);
  }
  EXPECT_FALSE(category_from_name("Nope"));
}

TEST(PruneTest, RelationsParseAndPrint) {
  for (const char* text : {"AnyDiff", "StatusDiffers", "IoDiffers", "MemoryDiffers(out.sec)"}) {
    EXPECT_EQ(PruneRelation::parse(text).to_string(), text);
  }
  EXPECT_EQ(PruneRelation::parse("MemoryDiffers(array)").annotation, "array");
  EXPECT_THROW(PruneRelation::parse("MemoryDiffers()"), ValidationError);
  EXPECT_THROW(PruneRelation::parse("Whatever"), ValidationError);
}

TEST(PruneTest, IdenticalProgramsPruneEverything) {
  Harness h = load_harness(testing::corpus_path("sort_equal.json"));
  h.programs[1] = h.programs[0];
  h.placements[1] = h.placements[0];
  h.annotations[0].at[1] = h.annotations[0].at[0];
  const std::string src = testing::read_file(h.program_path(Side::Left));
  const SessionDoc doc = run_analysis(h, {ProgramSource{"l", src}, ProgramSource{"r", src}});
  ASSERT_FALSE(doc.matrix.pairs.empty());
  const VisibleNodes v = prune(doc.trees[0], doc.trees[1], doc.matrix, doc.pairs,
                               {PruneRelation::parse("AnyDiff")});
  EXPECT_TRUE(v.left.empty());
  EXPECT_TRUE(v.right.empty());
}

TEST(PruneTest, BuggySortKeepsExactlyTheDifferingLeaves) {
  const SessionDoc& doc = corpus_session("sort_bug.json");
  const VisibleNodes v = prune(doc.trees[0], doc.trees[1], doc.matrix, doc.pairs,
                               {PruneRelation::parse("MemoryDiffers(array)")});
  std::set<NodeId> want_l, want_r;
  for (const PairRecord& p : doc.pairs) {
    if (!p.diff.memory_differs("array")) continue;
    want_l.insert(p.pair.first);
    want_r.insert(p.pair.second);
  }
  ASSERT_FALSE(want_l.empty());
  std::set<NodeId> got_l, got_r;
  for (NodeId n : v.left) if (doc.trees[0].node(n).is_leaf()) got_l.insert(n);
  for (NodeId n : v.right) if (doc.trees[1].node(n).is_leaf()) got_r.insert(n);
  EXPECT_EQ(got_l, want_l);
  EXPECT_EQ(got_r, want_r);
}

TEST(PruneTest, WatchStatusKeepsTrapLeavesFacingFinished) {
  const SessionDoc& doc = corpus_session("watch.json");
  const VisibleNodes v = prune(doc.trees[0], doc.trees[1], doc.matrix, doc.pairs,
                               {PruneRelation::parse("StatusDiffers")});
  std::size_t traps = 0;
  for (const LeafPair& p : doc.matrix.pairs) {
    if (doc.trees[1].node(p.second).status == Status::TrapOverflow &&
        doc.trees[0].node(p.first).status == Status::Finished) {
      ++traps;
      EXPECT_TRUE(v.right.count(p.second));
    }
  }
  EXPECT_GT(traps, 0u);
}

TEST(PruneTest, MissingDiffOrTargetIsAnError) {
  const SessionDoc& doc = corpus_session("sort_bug.json");
  std::vector<PairRecord> fewer(doc.pairs.begin() + 1, doc.pairs.end());
  EXPECT_THROW(prune(doc.trees[0], doc.trees[1], doc.matrix, fewer, {PruneRelation::parse("AnyDiff")}),
               Error);
  EXPECT_THROW(prune(doc.trees[0], doc.trees[1], doc.matrix, doc.pairs,
                     {PruneRelation::parse("MemoryDiffers(nothing)")}),
               Error);
  EXPECT_THROW(prune(doc.trees[0], doc.trees[1], doc.matrix, doc.pairs, {}), ValidationError);
}

TEST(PruneTest, NeverOrphansOnCorpus) {
  for (const char* name : testing::kCorpusHarnesses) {
    const SessionDoc& doc = corpus_session(name);
    for (const auto& spec : testing::prune_specs(doc)) {
      const auto failures = testing::check_prune_symmetry(
          doc, prune(doc.trees[0], doc.trees[1], doc.matrix, doc.pairs, spec), spec);
      EXPECT_TRUE(failures.empty()) << name << " " << spec[0].to_string() << ": " << failures.front();
    }
  }
}

TEST(PruneTest, OracleCatchesAnOrphan) {
  const SessionDoc& doc = corpus_session("sort_bug.json");
  const std::vector<PruneRelation> spec = {PruneRelation::parse("AnyDiff")};
  VisibleNodes v = prune(doc.trees[0], doc.trees[1], doc.matrix, doc.pairs, spec);
  ASSERT_FALSE(v.right.empty());
  v.right.clear();
  EXPECT_FALSE(testing::check_prune_symmetry(doc, v, spec).empty());
}

TEST(CompressTest, ChainCollapsesAtLevelTwo) {
  const ExecTree t = shaped({{0, {1}}, {1, {2}}, {2, {3}}});
  const CompressedTree c = compress(t, 2);
  ASSERT_EQ(c.nodes.size(), 1u);
  EXPECT_EQ(c.nodes[0].members, (std::vector<NodeId>{0, 1, 2, 3}));
  EXPECT_EQ(c.nodes[0].delta, (std::vector<ExprId>{1, 2, 3}));
  EXPECT_EQ(compress(t, 1).nodes.size(), 4u);
}

TEST(CompressTest, EmptyDeltaChildMergesAtLevelOne) {
  // 0 -> 1 (empty) -> {2, 3}
  const ExecTree t = shaped({{0, {}}, {1, {5}}, {1, {6}}});
  const CompressedTree c = compress(t, 1);
  ASSERT_EQ(c.nodes.size(), 3u);
  EXPECT_EQ(c.nodes[0].members, (std::vector<NodeId>{0, 1}));
  EXPECT_EQ(c.nodes[0].children.size(), 2u);
}

TEST(CompressTest, BranchingTreeWithoutEmptyDeltasIsUnchanged) {
  const ExecTree t = shaped({{0, {1}}, {0, {2}}, {1, {3}}, {1, {4}}});
  for (int level : {0, 1, 2}) {
    const CompressedTree c = compress(t, level);
    ASSERT_EQ(c.nodes.size(), t.nodes.size()) << level;
    for (const CompressedNode& n : c.nodes) EXPECT_EQ(n.members.size(), 1u);
  }
  EXPECT_THROW(compress(t, 3), ValidationError);
}

TEST(CompressTest, OracleCatchesALostLeaf) {
  const ExecTree t = shaped({{0, {1}}, {0, {2}}});
  CompressedTree c = compress(t, 0);
  c.nodes[0].children.pop_back();
  c.nodes.pop_back();
  EXPECT_FALSE(testing::check_compression(t, c).empty());
}

TEST(CompressTest, CorpusSessionsKeepLeavesAndConstraints) {
  for (const char* name : testing::kCorpusHarnesses) {
    const SessionDoc& doc = corpus_session(name);
    for (const ExecTree& t : doc.trees) {
      for (int level : {0, 1, 2}) {
        const auto failures = testing::check_compression(t, compress(t, level));
        EXPECT_TRUE(failures.empty()) << name << " level " << level << ": " << failures.front();
      }
      EXPECT_LE(compress(t, 2).nodes.size(), compress(t, 1).nodes.size());
      EXPECT_LE(compress(t, 1).nodes.size(), compress(t, 0).nodes.size());
    }
  }
}

}  // namespace
}  // namespace twinsym
