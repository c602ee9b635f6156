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


#include "twinsym/report.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <map>

#include "support/fixture.hpp"
#include "twinsym/analysis.hpp"
#include "twinsym/error.hpp"

namespace twinsym {
namespace {

using testing::corpus_session;

std::size_t count(const std::string& text, const std::string& what) {
  std::size_t n = 0;
  for (auto at = text.find(what); at != std::string::npos; at = text.find(what, at + 1)) ++n;
  return n;
}

TEST(ReportTest, EqualSessionSaysSo) {
  for (const char* name : {"halt_vs_halt.json", "sort_equal.json", "watch_bounded.json"}) {
    const std::string r = render_report(corpus_session(name));
    EXPECT_NE(r.find("all compared targets proved equal"), std::string::npos) << name;
    EXPECT_EQ(count(r, "Differs pair"), 0u) << name;
  }
}

TEST(ReportTest, ListsCountsAndCacheStatistics) {
  const SessionDoc& doc = corpus_session("sort_equal.json");
  const std::string r = render_report(doc);
  EXPECT_NE(r.find("left: insertion_sort, "), std::string::npos);
  EXPECT_NE(r.find(" 24 leaves"), std::string::npos);
  EXPECT_NE(r.find("compatible pairs: " + std::to_string(doc.matrix.pairs.size())), std::string::npos);
  EXPECT_NE(r.find(std::to_string(doc.matrix.stats.cache_hits) + " cache hits"), std::string::npos);
  EXPECT_EQ(count(r, "pair "), doc.pairs.size());
  EXPECT_EQ(r, render_report(import_session(export_session(doc))));
}

TEST(ReportTest, BuggySortHasConcretionTables) {
  const SessionDoc& doc = corpus_session("sort_bug.json");
  const std::string r = render_report(doc);
  EXPECT_EQ(count(r, "Differs pair"), doc.differing_pairs().size());
  EXPECT_NE(r.find("MemoryDiffers(array)"), std::string::npos);
  EXPECT_NE(r.find("num_0 | num_1 | num_2 | num_3 | left array"), std::string::npos);
  EXPECT_NE(r.find("refinement "), std::string::npos);
}

TEST(ReportTest, WatchNamesTrapOverflow) {
  const std::string r = render_report(corpus_session("watch.json"));
  EXPECT_GT(count(r, "StatusDiffers Finished vs TrapOverflow"), 0u);
  EXPECT_NE(r.find("ErrorState"), std::string::npos);
}

TEST(TestgenTest, BuggySortVectorsReplay) {
  const SessionDoc& doc = corpus_session("sort_bug.json");
  const std::vector<TestVector> vs = test_vectors(doc);
  ASSERT_FALSE(vs.empty());
  for (const TestVector& v : vs) {
    const ReplayResult r = replay(doc, v);
    EXPECT_TRUE(r.ok) << v.index << (r.mismatches.empty() ? "" : ": " + r.mismatches[0]);
    EXPECT_NE(v.expected.at("array")[0], v.expected.at("array")[1]);
  }
}

TEST(TestgenTest, WatchVectorsReplay) {
  const SessionDoc& doc = corpus_session("watch.json");
  const std::vector<TestVector> vs = test_vectors(doc);
  ASSERT_FALSE(vs.empty());
  bool trap = false;
  for (const TestVector& v : vs) {
    EXPECT_TRUE(replay(doc, v).ok) << v.index;
    trap |= v.status[1] == Status::TrapOverflow;
  }
  EXPECT_TRUE(trap);
}

TEST(TestgenTest, TextRoundTrip) {
  const SessionDoc& doc = corpus_session("watch.json");
  const std::vector<TestVector> vs = test_vectors(doc);
  const std::string text = write_test_vectors(doc, vs);
  EXPECT_EQ(text.rfind("# twinsym test vectors 1\n", 0), 0u);
  EXPECT_EQ(parse_test_vectors(text), vs);
}

TEST(TestgenTest, TamperedVectorFailsReplay) {
  const SessionDoc& doc = corpus_session("sort_bug.json");
  TestVector v = test_vectors(doc).front();
  v.expected["array"][1] ^= 1;
  v.status[0] = Status::TrapOverflow;
  const ReplayResult r = replay(doc, v);
  EXPECT_FALSE(r.ok);
  EXPECT_EQ(r.mismatches.size(), 2u);
}

TEST(TestgenTest, AtMostKVectorsPerTarget) {
  for (std::uint32_t k : {1u, 3u}) {
    AnalysisOptions o;
    o.concretions = k;
    const SessionDoc doc = run_analysis_file(testing::corpus_path("sort_bug.json"), o);
    std::map<LeafPair, std::size_t> per_pair;
    for (const TestVector& v : test_vectors(doc)) ++per_pair[v.pair];
    for (const auto& [p, n] : per_pair) EXPECT_LE(n, k);
  }
}

TEST(TestgenTest, EqualSessionWithSharedInputs) {
  EXPECT_TRUE(test_vectors(corpus_session("sort_equal.json")).empty());
  Harness h = load_harness(testing::corpus_path("sort_equal.json"));
  h.diff.concretize_equal = true;
  const SessionDoc doc = run_analysis(h, corpus_session("sort_equal.json").programs);
  const std::vector<TestVector> vs = test_vectors(doc);
  ASSERT_FALSE(vs.empty());
  for (const TestVector& v : vs) {
    EXPECT_EQ(v.source, "pair");
    EXPECT_EQ(v.expected.at("array")[0], v.expected.at("array")[1]);
    EXPECT_EQ(v.status[0], v.status[1]);
    EXPECT_TRUE(replay(doc, v).ok);
  }
}

TEST(TestgenTest, MalformedVectorLines) {
  EXPECT_THROW(parse_test_vectors("vector=1 pair=1\n"), ParseError);
  EXPECT_THROW(parse_test_vectors("vector=1\n"), ParseError);
  EXPECT_THROW(parse_test_vectors("# ok\nbogus\n"), ParseError);
  EXPECT_TRUE(parse_test_vectors("# only comments\n").empty());
}

}  // namespace
}  // namespace twinsym
