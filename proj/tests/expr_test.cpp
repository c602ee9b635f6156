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

#include "twinsym/expr.hpp"

#include <gtest/gtest.h>

#include <cstdint>

#include "support/random_expr.hpp"
#include "twinsym/error.hpp"

namespace twinsym {
namespace {

TEST(ExprBuildTest, HashConsingReturnsSameNode) {
  ExprPool pool;
  Expr a = pool.add(pool.constant(8, 1), pool.constant(8, 2));
  Expr b = pool.add(pool.constant(8, 1), pool.constant(8, 2));
  EXPECT_EQ(a, b);
  EXPECT_EQ(a->id, b->id);
  EXPECT_NE(a, pool.add(pool.constant(8, 2), pool.constant(8, 1)));
}

TEST(ExprBuildTest, WidthMismatchIsRejected) {
  ExprPool pool;
  EXPECT_THROW(pool.eq(pool.var("x", 8), pool.var("y", 16)), WidthError);
  EXPECT_THROW(pool.ite(pool.var("c", 8), pool.var("x", 8), pool.var("x", 8)), WidthError);
  EXPECT_THROW(pool.extract(pool.var("x", 8), 8, 0), WidthError);
  EXPECT_THROW(pool.extract(pool.var("x", 8), 2, 3), WidthError);
}

TEST(ExprBuildTest, VariableCarriesWidth) {
  ExprPool pool;
  Expr v = pool.var("num_0", 8);
  EXPECT_EQ(v->op, Op::Var);
  EXPECT_EQ(v->width, 8u);
  EXPECT_EQ(v->name, "num_0");
  EXPECT_EQ(pool.var("num_0", 8), v);
}

TEST(ExprBuildTest, ResultWidths) {
  ExprPool pool;
  Expr x = pool.var("x", 16);
  EXPECT_EQ(pool.ult(x, x)->width, 1u);
  EXPECT_EQ(pool.extract(x, 11, 4)->width, 8u);
  EXPECT_EQ(pool.concat(x, pool.var("y", 8))->width, 24u);
  EXPECT_EQ(pool.zext(x, 33)->width, 33u);
}

TEST(ExprSimplifyTest, FoldsModularConstant) {
  ExprPool pool;
  EXPECT_EQ(pool.simplify(pool.add(pool.constant(8, 255), pool.constant(8, 1))),
            pool.constant(8, 0));
}

TEST(ExprSimplifyTest, XorSelfIsZero) {
  ExprPool pool;
  Expr x = pool.var("x", 8);
  EXPECT_EQ(pool.simplify(pool.bv_xor(x, x)), pool.constant(8, 0));
}

TEST(ExprSimplifyTest, IteOnTrueConditionPicksThenArm) {
  ExprPool pool;
  Expr a = pool.var("a", 8);
  Expr b = pool.var("b", 8);
  Expr cond = pool.eq(pool.constant(1, 1), pool.constant(1, 1));
  EXPECT_EQ(pool.simplify(pool.ite(cond, a, b)), a);
}

TEST(ExprSimplifyTest, IdentityRules) {
  ExprPool pool;
  Expr x = pool.var("x", 8);
  EXPECT_EQ(pool.simplify(pool.add(x, pool.constant(8, 0))), x);
  EXPECT_EQ(pool.simplify(pool.add(pool.constant(8, 0), x)), x);
  EXPECT_EQ(pool.simplify(pool.mul(x, pool.constant(8, 1))), x);
  EXPECT_EQ(pool.simplify(pool.eq(pool.constant(8, 3), pool.constant(8, 4))), pool.falsity());
  EXPECT_EQ(pool.simplify(pool.bv_not(pool.bv_not(x))), x);
}

TEST(ExprSimplifyTest, ByteSlicesRejoin) {
  // A 32-bit value stored byte-wise and loaded back folds to the value.
  ExprPool pool;
  Expr x = pool.var("x", 32);
  Expr b0 = pool.simplify(pool.extract(x, 7, 0));
  Expr b1 = pool.simplify(pool.extract(x, 15, 8));
  Expr b2 = pool.simplify(pool.extract(x, 23, 16));
  Expr b3 = pool.simplify(pool.extract(x, 31, 24));
  Expr loaded = pool.concat(b3, pool.concat(b2, pool.concat(b1, b0)));
  EXPECT_EQ(pool.simplify(loaded), x);
}

TEST(ExprSimplifyTest, AddressArithmeticFolds) {
  ExprPool pool;
  Expr addr = pool.add(pool.zext(pool.constant(8, 3), 32), pool.constant(32, 256));
  EXPECT_EQ(pool.simplify(addr), pool.constant(32, 259));
}

TEST(ExprEvalTest, SignedLessThanTreatsHighBitAsNegative) {
  ExprPool pool;
  // Oracle: reinterpret through int8_t.
  const bool expected = static_cast<std::int8_t>(255) < static_cast<std::int8_t>(0);
  EXPECT_EQ(eval(pool.slt(pool.constant(8, 255), pool.constant(8, 0)), {}),
            expected ? 1u : 0u);
  EXPECT_EQ(eval(pool.slt(pool.constant(8, 255), pool.constant(8, 0)), {}), 1u);
}

TEST(ExprEvalTest, AdditionWraps) {
  ExprPool pool;
  Expr e = pool.add(pool.var("x", 8), pool.var("y", 8));
  EXPECT_EQ(eval(e, {{"x", 200}, {"y", 100}}), 44u);
}

TEST(ExprEvalTest, ExtractLowByte) {
  ExprPool pool;
  EXPECT_EQ(eval(pool.extract(pool.constant(16, 0xABCD), 7, 0), {}), 0xCDu);
}

TEST(ExprEvalTest, DivisionByZeroIsTotal) {
  ExprPool pool;
  Expr x = pool.var("x", 8);
  Expr zero = pool.constant(8, 0);
  EXPECT_EQ(eval(pool.binary(Op::UDiv, x, zero), {{"x", 7}}), 255u);
  EXPECT_EQ(eval(pool.binary(Op::URem, x, zero), {{"x", 7}}), 7u);
}

TEST(ExprEvalTest, ShiftsSaturate) {
  ExprPool pool;
  auto c8 = [&](std::uint64_t v) { return pool.constant(8, v); };
  EXPECT_EQ(eval(pool.binary(Op::Shl, c8(1), c8(8)), {}), 0u);
  EXPECT_EQ(eval(pool.binary(Op::LShr, c8(0x80), c8(9)), {}), 0u);
  EXPECT_EQ(eval(pool.binary(Op::AShr, c8(0x80), c8(200)), {}), 0xFFu);
  EXPECT_EQ(eval(pool.binary(Op::AShr, c8(0x80), c8(3)), {}), 0xF0u);
  EXPECT_EQ(eval(pool.sext(c8(0x80), 16), {}), 0xFF80u);
}

TEST(ExprEvalTest, MissingVariableThrows) {
  ExprPool pool;
  EXPECT_THROW(eval(pool.var("x", 8), {}), Error);
}

TEST(ExprFreeVarsTest, Cases) {
  ExprPool pool;
  Expr x = pool.var("x", 8);
  Expr y = pool.var("y", 8);
  EXPECT_TRUE(free_vars(pool.constant(8, 5)).empty());
  EXPECT_EQ(free_vars(pool.add(x, pool.mul(x, y))), (std::set<VarDecl>{{"x", 8}, {"y", 8}}));
  Expr e = pool.ite(pool.eq(x, x), pool.constant(8, 0), y);
  EXPECT_EQ(free_vars(e), (std::set<VarDecl>{{"x", 8}, {"y", 8}}));
}

TEST(ExprTextTest, CanonicalRendering) {
  ExprPool pool;
  Expr e = pool.add(pool.var("num_0", 8), pool.constant(8, 1));
  EXPECT_EQ(to_string(e), "(add (var num_0 8) (const 8 1))");
  EXPECT_EQ(parse_expr(pool, to_string(e)), e);
}

TEST(ExprPropertyTest, SimplifyPreservesSemanticsAndIsIdempotent) {
  ExprPool pool;
  testing::RandomExprGen gen(pool, 0xC0FFEE,
                             {{"a", 8}, {"b", 8}, {"c", 1}, {"d", 16}, {"e", 4}});
  static constexpr std::uint32_t kWidths[] = {1, 4, 8, 16};
  for (int i = 0; i < 10000; ++i) {
    const std::uint32_t w = kWidths[gen.pick(4)];
    Expr e = gen.gen(w, 5);
    Expr s = pool.simplify(e);
    ASSERT_EQ(s->width, e->width) << to_string(e);
    ASSERT_EQ(pool.simplify(s), s) << to_string(e);
    for (int j = 0; j < 4; ++j) {
      Assignment a = gen.assignment();
      ASSERT_EQ(eval(s, a), eval(e, a)) << to_string(e) << "\n=> " << to_string(s);
    }
  }
}

TEST(ExprPropertyTest, StructuralEqualityIffSameId) {
  ExprPool pool;
  testing::RandomExprGen gen(pool, 7, {{"a", 8}, {"b", 8}});
  for (int i = 0; i < 2000; ++i) {
    Expr e = gen.gen(8, 4);
    // Reparsing the canonical text rebuilds the node bottom-up.
    EXPECT_EQ(parse_expr(pool, to_string(e)), e);
  }
}

}  // namespace
}  // namespace twinsym
