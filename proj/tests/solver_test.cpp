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

#include "twinsym/solver.hpp"

#include <gtest/gtest.h>

#include <set>

#include "support/random_expr.hpp"
#include "support/solver_oracle.hpp"
#include "twinsym/sat.hpp"

namespace twinsym {
namespace {

class SolverTest : public ::testing::Test {
 protected:
  ExprPool pool;
  EmbeddedSolver solver;
  Expr x8 = pool.var("x", 8);
  Expr y8 = pool.var("y", 8);
  Expr c8(std::uint64_t v) { return pool.constant(8, v); }
};

TEST_F(SolverTest, ContradictionCoreHasBothClauses) {
  Expr eq5 = pool.eq(x8, c8(5));
  Expr ne5 = pool.ne(x8, c8(5));
  SolveResult r = solver.is_sat({eq5, ne5});
  ASSERT_TRUE(r.unsat());
  EXPECT_EQ(ClauseSet(r.core), (ClauseSet{eq5, ne5}));
}

TEST_F(SolverTest, EmptyIntervalIsUnsat) {
  EXPECT_TRUE(solver.is_sat({pool.ult(c8(5), x8), pool.ult(x8, c8(3))}).unsat());
}

TEST_F(SolverTest, SumToZeroModel) {
  ClauseSet cs{pool.eq(pool.add(x8, y8), c8(0)), pool.eq(x8, c8(1))};
  SolveResult r = solver.is_sat(cs);
  ASSERT_TRUE(r.sat());
  EXPECT_TRUE(testing::satisfies(cs, r.model));
  EXPECT_EQ(r.model.at("x"), 1u);
  EXPECT_EQ(r.model.at("y"), 255u);
}

TEST_F(SolverTest, EmptySetIsSat) { EXPECT_TRUE(solver.is_sat({}).sat()); }

TEST_F(SolverTest, ConstantFalseClause) {
  SolveResult r = solver.is_sat({pool.falsity(), pool.ult(x8, c8(9))});
  ASSERT_TRUE(r.unsat());
  EXPECT_EQ(r.core, std::vector<Expr>{pool.falsity()});
}

TEST_F(SolverTest, CoreIsMinimizedByDeletion) {
  // x < 3, x > 5 conflict; the other clauses are satisfiable noise.
  Expr lt3 = pool.ult(x8, c8(3));
  Expr gt5 = pool.ult(c8(5), x8);
  ClauseSet cs{lt3, gt5, pool.ult(y8, c8(100)), pool.ne(y8, c8(4)), pool.ult(x8, c8(200))};
  SolveResult r = solver.is_sat(cs);
  ASSERT_TRUE(r.unsat());
  EXPECT_EQ(ClauseSet(r.core), (ClauseSet{lt3, gt5}));
}

TEST_F(SolverTest, DivisionCircuitMatchesEval) {
  // Every (a, b) over 4 bits: the blasted udiv/urem pin to eval's value.
  ExprPool p;
  Expr a = p.var("a", 4);
  Expr b = p.var("b", 4);
  for (std::uint64_t av = 0; av < 16; ++av) {
    for (std::uint64_t bv = 0; bv < 16; ++bv) {
      ClauseSet fix{p.eq(a, p.constant(4, av)), p.eq(b, p.constant(4, bv))};
      for (Op op : {Op::UDiv, Op::URem, Op::Shl, Op::LShr, Op::AShr, Op::Mul}) {
        Expr e = p.binary(op, a, b);
        const std::uint64_t expected = eval(e, {{"a", av}, {"b", bv}});
        ClauseSet cs = fix;
        cs.insert(p.ne(e, p.constant(4, expected)));
        ASSERT_TRUE(solver.is_sat(cs).unsat()) << op_name(op) << " " << av << " " << bv;
      }
    }
  }
}

TEST_F(SolverTest, EnumerateSingleBitGivesBothValues) {
  Expr b = pool.var("b", 1);
  std::vector<VarDecl> vars{{"b", 1}};
  ModelEnumeration m = enumerate_models(solver, pool, {pool.eq(b, b)}, vars, 5);
  ASSERT_EQ(m.models.size(), 2u);
  EXPECT_FALSE(m.partial);
  std::set<std::uint64_t> seen{m.models[0].at("b"), m.models[1].at("b")};
  EXPECT_EQ(seen, (std::set<std::uint64_t>{0, 1}));
}

TEST_F(SolverTest, EnumerateUnsatIsEmpty) {
  std::vector<VarDecl> vars{{"x", 8}};
  ModelEnumeration m =
      enumerate_models(solver, pool, {pool.ult(x8, c8(3)), pool.ult(c8(9), x8)}, vars, 3);
  EXPECT_TRUE(m.models.empty());
}

TEST_F(SolverTest, EnumerateBoundedRange) {
  ClauseSet cs{pool.ult(x8, c8(3))};
  std::vector<VarDecl> vars{{"x", 8}};
  ModelEnumeration m = enumerate_models(solver, pool, cs, vars, 3);
  ASSERT_EQ(m.models.size(), 3u);
  std::set<std::uint64_t> seen;
  for (const auto& a : m.models) {
    EXPECT_TRUE(testing::satisfies(cs, a));
    seen.insert(a.at("x"));
  }
  EXPECT_EQ(seen, (std::set<std::uint64_t>{0, 1, 2}));
  // Asking for more than exist returns exactly the existing ones.
  EXPECT_EQ(enumerate_models(solver, pool, cs, vars, 10).models.size(), 3u);
}

TEST_F(SolverTest, CheckEqualCommutativity) {
  EXPECT_EQ(check_equal(solver, pool, {}, pool.add(x8, c8(1)), pool.add(c8(1), x8)).kind,
            EqualityResult::Kind::ProvedEqual);
}

TEST_F(SolverTest, CheckEqualDistinctVariables) {
  EqualityResult r = check_equal(solver, pool, {}, x8, y8);
  ASSERT_EQ(r.kind, EqualityResult::Kind::Differs);
  EXPECT_NE(r.witness.at("x"), r.witness.at("y"));
}

TEST_F(SolverTest, CheckEqualRemainderAsMask) {
  Expr rem = pool.binary(Op::URem, x8, c8(16));
  Expr mask = pool.bv_and(x8, c8(15));
  ClauseSet base{pool.ult(x8, c8(16))};
  // Oracle: all 256 values of x.
  bool oracle_equal = true;
  for (std::uint64_t v = 0; v < 256; ++v) {
    Assignment a{{"x", v}};
    if (eval(base.clauses()[0], a) && eval(rem, a) != eval(mask, a)) oracle_equal = false;
  }
  ASSERT_TRUE(oracle_equal);
  EXPECT_EQ(check_equal(solver, pool, base, rem, mask).kind, EqualityResult::Kind::ProvedEqual);
  // Without the bound the two differ nowhere either (x % 16 == x & 15 always).
  EXPECT_EQ(check_equal(solver, pool, {}, rem, mask).kind, EqualityResult::Kind::ProvedEqual);
  // x % 10 and x & 9 do differ.
  EXPECT_EQ(check_equal(solver, pool, base, pool.binary(Op::URem, x8, c8(10)),
                        pool.bv_and(x8, c8(9))).kind,
            EqualityResult::Kind::Differs);
}

TEST_F(SolverTest, BudgetExhaustionIsUnknown) {
  SolverOptions opts;
  opts.max_conflicts = 1;
  EmbeddedSolver tight(opts);
  // 16-bit factoring of a prime needs more than one conflict.
  Expr a = pool.var("a", 16);
  Expr b = pool.var("b", 16);
  ClauseSet cs{pool.eq(pool.mul(pool.zext(a, 32), pool.zext(b, 32)), pool.constant(32, 65521)),
               pool.ult(pool.constant(16, 1), a), pool.ult(pool.constant(16, 1), b)};
  EXPECT_TRUE(tight.is_sat(cs).unknown());
  EXPECT_TRUE(solver.is_sat(cs).unsat());
}

TEST(SatSolverTest, FailedAssumptionsAreSubset) {
  sat::Solver s;
  const sat::Var a = s.new_var();
  const sat::Var b = s.new_var();
  const sat::Var c = s.new_var();
  s.add_clause({sat::Lit::make(a, true), sat::Lit::make(b, true)});
  std::vector<sat::Lit> assume{sat::Lit::make(c), sat::Lit::make(a), sat::Lit::make(b)};
  ASSERT_EQ(s.solve(assume), sat::Result::Unsat);
  std::set<sat::Lit> failed(s.failed_assumptions().begin(), s.failed_assumptions().end());
  EXPECT_EQ(failed, (std::set<sat::Lit>{sat::Lit::make(a), sat::Lit::make(b)}));
  EXPECT_EQ(s.solve(), sat::Result::Sat);
}

TEST(SatSolverTest, PigeonholeIsUnsat) {
  // 5 pigeons, 4 holes.
  sat::Solver s;
  constexpr int kP = 5;
  constexpr int kH = 4;
  sat::Var v[kP][kH];
  for (auto& row : v) for (auto& x : row) x = s.new_var();
  for (int p = 0; p < kP; ++p) {
    std::vector<sat::Lit> some;
    for (int h = 0; h < kH; ++h) some.push_back(sat::Lit::make(v[p][h]));
    s.add_clause(some);
  }
  for (int h = 0; h < kH; ++h) {
    for (int p = 0; p < kP; ++p) {
      for (int q = p + 1; q < kP; ++q) {
        s.add_clause({sat::Lit::make(v[p][h], true), sat::Lit::make(v[q][h], true)});
      }
    }
  }
  EXPECT_EQ(s.solve(), sat::Result::Unsat);
}

// Random clause sets over at most three small variables, checked against
// exhaustive enumeration. The acceptance suite runs the larger campaign.
TEST(SolverFuzzTest, AgreesWithEnumeration) {
  ExprPool pool;
  EmbeddedSolver solver;
  std::mt19937_64 rng(2024);
  for (int round = 0; round < 1500; ++round) {
    static constexpr std::uint32_t kWidths[] = {1, 2, 3, 4};
    std::vector<VarDecl> vars;
    const int nvars = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < nvars; ++i) vars.emplace_back("v" + std::to_string(i), kWidths[rng() % 4]);
    testing::RandomExprGen gen(pool, rng(), vars);
    ClauseSet cs;
    const int nclauses = 1 + static_cast<int>(rng() % 4);
    for (int i = 0; i < nclauses; ++i) cs.insert(gen.gen(1, 3));
    const bool expected = testing::brute_force_sat(cs, vars);
    SolveResult r = solver.is_sat(cs);
    ASSERT_FALSE(r.unknown());
    ASSERT_EQ(r.sat(), expected) << round;
    if (r.sat()) {
      Assignment full = r.model;
      for (const auto& v : vars) full.try_emplace(v.first, 0);
      ASSERT_TRUE(testing::satisfies(cs, full));
    } else {
      ClauseSet core(r.core);
      ASSERT_TRUE(cs.includes(core));
      ASSERT_FALSE(testing::brute_force_sat(core, vars));
      for (Expr drop : core) {
        ClauseSet less;
        for (Expr c : core) if (c != drop) less.insert(c);
        ASSERT_TRUE(testing::brute_force_sat(less, vars)) << "core not minimal";
      }
    }
  }
}

}  // namespace
}  // namespace twinsym
