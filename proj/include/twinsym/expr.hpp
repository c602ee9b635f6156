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

// Hash-consed fixed-width bitvector expressions.
//
// Every node is owned by an ExprPool and is immutable once built. Building a
// node that is structurally identical to an existing one returns the existing
// node, so pointer (and id) equality is structural equality.

#ifndef TWINSYM_EXPR_HPP_
#define TWINSYM_EXPR_HPP_

#include <array>
#include <cstdint>
#include <deque>
#include <map>
#include <mutex>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace twinsym {

enum class Op : std::uint8_t {
  Const,
  Var,
  Add,
  Sub,
  Mul,
  UDiv,
  URem,
  And,
  Or,
  Xor,
  Not,
  Shl,
  LShr,
  AShr,
  Eq,
  Ult,
  Slt,
  Ite,
  ZExt,
  SExt,
  Extract,
  Concat,
};

std::string_view op_name(Op op);

using ExprId = std::uint32_t;

inline constexpr std::uint32_t kMaxWidth = 64;

struct ExprNode {
  ExprId id = 0;
  Op op = Op::Const;
  std::uint32_t width = 0;
  std::uint64_t value = 0;  // Const only
  std::string name;         // Var only
  std::uint32_t hi = 0;     // Extract only
  std::uint32_t lo = 0;     // Extract only
  std::array<const ExprNode*, 3> args{};
  std::uint8_t arity = 0;

  const ExprNode* arg(std::size_t i) const { return args[i]; }
  std::span<const ExprNode* const> operands() const {
    return {args.data(), arity};
  }
  bool is_const() const { return op == Op::Const; }
  bool is_const(std::uint64_t v) const { return op == Op::Const && value == v; }
};

using Expr = const ExprNode*;

/// Concrete values for free variables, keyed by variable name.
using Assignment = std::map<std::string, std::uint64_t>;

/// A variable as (name, width).
using VarDecl = std::pair<std::string, std::uint32_t>;

inline std::uint64_t width_mask(std::uint32_t width) {
  return width >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
}

/// Owner of all expression nodes of one analysis run. Ids are dense, start at
/// 1 and are stable for the lifetime of the pool. All members are safe to call
/// concurrently.
class ExprPool {
 public:
  ExprPool() = default;
  ExprPool(const ExprPool&) = delete;
  ExprPool& operator=(const ExprPool&) = delete;

  Expr constant(std::uint32_t width, std::uint64_t value);
  Expr var(std::string_view name, std::uint32_t width);
  Expr unary(Op op, Expr a);
  Expr binary(Op op, Expr a, Expr b);
  Expr ite(Expr cond, Expr then_e, Expr else_e);
  Expr zext(Expr a, std::uint32_t width);
  Expr sext(Expr a, std::uint32_t width);
  Expr extract(Expr a, std::uint32_t hi, std::uint32_t lo);
  Expr concat(Expr hi, Expr lo);

  /// Rebuilds `e` with new operands, keeping its op and parameters.
  Expr rebuild(Expr e, std::span<const Expr> operands);

  Expr add(Expr a, Expr b) { return binary(Op::Add, a, b); }
  Expr sub(Expr a, Expr b) { return binary(Op::Sub, a, b); }
  Expr mul(Expr a, Expr b) { return binary(Op::Mul, a, b); }
  Expr bv_and(Expr a, Expr b) { return binary(Op::And, a, b); }
  Expr bv_or(Expr a, Expr b) { return binary(Op::Or, a, b); }
  Expr bv_xor(Expr a, Expr b) { return binary(Op::Xor, a, b); }
  Expr bv_not(Expr a) { return unary(Op::Not, a); }
  Expr eq(Expr a, Expr b) { return binary(Op::Eq, a, b); }
  Expr ult(Expr a, Expr b) { return binary(Op::Ult, a, b); }
  Expr slt(Expr a, Expr b) { return binary(Op::Slt, a, b); }
  Expr ne(Expr a, Expr b) { return bv_not(eq(a, b)); }
  Expr truth() { return constant(1, 1); }
  Expr falsity() { return constant(1, 0); }

  /// Width-1 "a is nonzero" for an expression of any width.
  Expr nonzero(Expr a);
  /// Conjunction / disjunction of width-1 expressions; empty input yields
  /// true / false.
  Expr conjunction(std::span<const Expr> parts);
  Expr disjunction(std::span<const Expr> parts);

  /// Local bottom-up simplification. The result is semantically equal to `e`
  /// and simplify(simplify(e)) == simplify(e).
  Expr simplify(Expr e);

  /// Node with the given id, or nullptr.
  Expr get(ExprId id) const;
  std::size_t size() const;

 private:
  struct Key {
    Op op;
    std::uint32_t width;
    std::uint64_t value;
    std::string name;
    std::uint32_t hi;
    std::uint32_t lo;
    std::array<ExprId, 3> args;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const;
  };

  Expr intern(ExprNode node);
  Expr rewrite(Expr e);
  Expr simplify_locked(Expr e);

  mutable std::recursive_mutex mu_;
  std::deque<ExprNode> nodes_;
  std::unordered_map<Key, Expr, KeyHash> table_;
  std::unordered_map<ExprId, Expr> simplified_;
};

/// Two's-complement fixed-width evaluation. udiv by zero yields all-ones and
/// urem by zero yields the dividend. Throws Error when a variable is missing
/// from `a`.
std::uint64_t eval(Expr e, const Assignment& a);

/// Evaluates a batch of roots sharing one memo table.
std::vector<std::uint64_t> eval_all(std::span<const Expr> roots,
                                    const Assignment& a);

/// Exact set of Var leaves, syntactically (before any simplification).
std::set<VarDecl> free_vars(Expr e);
std::set<VarDecl> free_vars(std::span<const Expr> roots);

/// Canonical prefix rendering, e.g. `(add (var num_0 8) (const 8 1))`.
std::string to_string(Expr e);

/// Parses the canonical rendering back into `pool`.
Expr parse_expr(ExprPool& pool, std::string_view text);

/// Sign-extends the low `width` bits of `v` to a signed 64-bit value.
std::int64_t to_signed(std::uint64_t v, std::uint32_t width);

}  // namespace twinsym

#endif  // TWINSYM_EXPR_HPP_
