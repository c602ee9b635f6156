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

#include <algorithm>
#include <bit>
#include <cctype>
#include <functional>
#include <sstream>

#include "twinsym/error.hpp"

namespace twinsym {
namespace {

std::uint64_t sign_bit(std::uint32_t width) {
  return std::uint64_t{1} << (width - 1);
}

bool is_ones(Expr e) { return e->is_const(width_mask(e->width)); }

// Semantics of one node over concrete operand values. Shared by eval and the
// constant folder so the two can never disagree.
std::uint64_t apply(Expr e, std::span<const std::uint64_t> v) {
  const std::uint32_t w = e->width;
  const std::uint64_t m = width_mask(w);
  switch (e->op) {
    case Op::Const:
      return e->value;
    case Op::Var:
      return 0;
    case Op::Add:
      return (v[0] + v[1]) & m;
    case Op::Sub:
      return (v[0] - v[1]) & m;
    case Op::Mul:
      return (v[0] * v[1]) & m;
    case Op::UDiv:
      return v[1] == 0 ? m : v[0] / v[1];
    case Op::URem:
      return v[1] == 0 ? v[0] : v[0] % v[1];
    case Op::And:
      return v[0] & v[1];
    case Op::Or:
      return v[0] | v[1];
    case Op::Xor:
      return v[0] ^ v[1];
    case Op::Not:
      return ~v[0] & m;
    case Op::Shl:
      return v[1] >= w ? 0 : (v[0] << v[1]) & m;
    case Op::LShr:
      return v[1] >= w ? 0 : v[0] >> v[1];
    case Op::AShr: {
      const bool neg = (v[0] & sign_bit(w)) != 0;
      if (v[1] >= w) return neg ? m : 0;
      std::uint64_t r = v[0] >> v[1];
      if (neg && v[1] > 0) r |= m & ~(m >> v[1]);
      return r;
    }
    case Op::Eq:
      return v[0] == v[1] ? 1 : 0;
    case Op::Ult:
      return v[0] < v[1] ? 1 : 0;
    case Op::Slt: {
      const std::uint32_t aw = e->arg(0)->width;
      return to_signed(v[0], aw) < to_signed(v[1], aw) ? 1 : 0;
    }
    case Op::Ite:
      return v[0] ? v[1] : v[2];
    case Op::ZExt:
      return v[0];
    case Op::SExt: {
      const std::uint32_t aw = e->arg(0)->width;
      return static_cast<std::uint64_t>(to_signed(v[0], aw)) & m;
    }
    case Op::Extract:
      return (v[0] >> e->lo) & m;
    case Op::Concat: {
      const std::uint32_t lw = e->arg(1)->width;
      return ((v[0] << lw) | v[1]) & m;
    }
  }
  return 0;
}

bool commutative(Op op) {
  switch (op) {
    case Op::Add:
    case Op::Mul:
    case Op::And:
    case Op::Or:
    case Op::Xor:
    case Op::Eq:
      return true;
    default:
      return false;
  }
}

}  // namespace

std::string_view op_name(Op op) {
  switch (op) {
    case Op::Const: return "const";
    case Op::Var: return "var";
    case Op::Add: return "add";
    case Op::Sub: return "sub";
    case Op::Mul: return "mul";
    case Op::UDiv: return "udiv";
    case Op::URem: return "urem";
    case Op::And: return "and";
    case Op::Or: return "or";
    case Op::Xor: return "xor";
    case Op::Not: return "not";
    case Op::Shl: return "shl";
    case Op::LShr: return "lshr";
    case Op::AShr: return "ashr";
    case Op::Eq: return "eq";
    case Op::Ult: return "ult";
    case Op::Slt: return "slt";
    case Op::Ite: return "ite";
    case Op::ZExt: return "zext";
    case Op::SExt: return "sext";
    case Op::Extract: return "extract";
    case Op::Concat: return "concat";
  }
  return "?";
}

std::int64_t to_signed(std::uint64_t v, std::uint32_t width) {
  if (width >= 64) return static_cast<std::int64_t>(v);
  v &= width_mask(width);
  if (v & sign_bit(width)) return static_cast<std::int64_t>(v) - (std::int64_t{1} << width);
  return static_cast<std::int64_t>(v);
}

std::size_t ExprPool::KeyHash::operator()(const Key& k) const {
  std::size_t h = std::hash<std::uint64_t>{}(k.value);
  auto mix = [&h](std::size_t x) { h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
  mix(static_cast<std::size_t>(k.op));
  mix(k.width);
  mix(std::hash<std::string>{}(k.name));
  mix(k.hi);
  mix(k.lo);
  for (ExprId a : k.args) mix(a);
  return h;
}

Expr ExprPool::intern(ExprNode node) {
  Key key{node.op, node.width, node.value, node.name, node.hi, node.lo, {0, 0, 0}};
  for (std::size_t i = 0; i < node.arity; ++i) key.args[i] = node.args[i]->id;
  std::lock_guard lock(mu_);
  if (auto it = table_.find(key); it != table_.end()) return it->second;
  node.id = static_cast<ExprId>(nodes_.size() + 1);
  nodes_.push_back(std::move(node));
  Expr e = &nodes_.back();
  table_.emplace(std::move(key), e);
  return e;
}

Expr ExprPool::constant(std::uint32_t width, std::uint64_t value) {
  if (width == 0 || width > kMaxWidth) {
    throw WidthError("constant width " + std::to_string(width) + " out of range");
  }
  ExprNode n;
  n.op = Op::Const;
  n.width = width;
  n.value = value & width_mask(width);
  return intern(std::move(n));
}

Expr ExprPool::var(std::string_view name, std::uint32_t width) {
  if (width == 0 || width > kMaxWidth) {
    throw WidthError("variable '" + std::string(name) + "' width out of range");
  }
  if (name.empty()) throw Error("variable name must be nonempty");
  ExprNode n;
  n.op = Op::Var;
  n.width = width;
  n.name = std::string(name);
  return intern(std::move(n));
}

Expr ExprPool::unary(Op op, Expr a) {
  if (op != Op::Not) throw Error("unary: unsupported op " + std::string(op_name(op)));
  ExprNode n;
  n.op = op;
  n.width = a->width;
  n.args[0] = a;
  n.arity = 1;
  return intern(std::move(n));
}

Expr ExprPool::binary(Op op, Expr a, Expr b) {
  ExprNode n;
  n.op = op;
  n.args[0] = a;
  n.args[1] = b;
  n.arity = 2;
  switch (op) {
    case Op::Add: case Op::Sub: case Op::Mul: case Op::UDiv: case Op::URem:
    case Op::And: case Op::Or: case Op::Xor: case Op::Shl: case Op::LShr:
    case Op::AShr:
      n.width = a->width;
      break;
    case Op::Eq: case Op::Ult: case Op::Slt:
      n.width = 1;
      break;
    case Op::Concat:
      return concat(a, b);
    default:
      throw Error("binary: unsupported op " + std::string(op_name(op)));
  }
  if (a->width != b->width) {
    throw WidthError(std::string(op_name(op)) + ": operand widths " +
                     std::to_string(a->width) + " and " + std::to_string(b->width) +
                     " differ");
  }
  return intern(std::move(n));
}

Expr ExprPool::ite(Expr cond, Expr then_e, Expr else_e) {
  if (cond->width != 1) throw WidthError("ite: condition must have width 1");
  if (then_e->width != else_e->width) throw WidthError("ite: arm widths differ");
  ExprNode n;
  n.op = Op::Ite;
  n.width = then_e->width;
  n.args = {cond, then_e, else_e};
  n.arity = 3;
  return intern(std::move(n));
}

Expr ExprPool::zext(Expr a, std::uint32_t width) {
  if (width < a->width || width > kMaxWidth) throw WidthError("zext: bad target width");
  ExprNode n;
  n.op = Op::ZExt;
  n.width = width;
  n.args[0] = a;
  n.arity = 1;
  return intern(std::move(n));
}

Expr ExprPool::sext(Expr a, std::uint32_t width) {
  if (width < a->width || width > kMaxWidth) throw WidthError("sext: bad target width");
  ExprNode n;
  n.op = Op::SExt;
  n.width = width;
  n.args[0] = a;
  n.arity = 1;
  return intern(std::move(n));
}

Expr ExprPool::extract(Expr a, std::uint32_t hi, std::uint32_t lo) {
  if (lo > hi || hi >= a->width) {
    throw WidthError("extract: need 0 <= lo <= hi < " + std::to_string(a->width));
  }
  ExprNode n;
  n.op = Op::Extract;
  n.width = hi - lo + 1;
  n.hi = hi;
  n.lo = lo;
  n.args[0] = a;
  n.arity = 1;
  return intern(std::move(n));
}

Expr ExprPool::concat(Expr hi, Expr lo) {
  if (hi->width + lo->width > kMaxWidth) throw WidthError("concat: result wider than 64");
  ExprNode n;
  n.op = Op::Concat;
  n.width = hi->width + lo->width;
  n.args[0] = hi;
  n.args[1] = lo;
  n.arity = 2;
  return intern(std::move(n));
}

Expr ExprPool::rebuild(Expr e, std::span<const Expr> ops) {
  switch (e->op) {
    case Op::Const:
    case Op::Var:
      return e;
    case Op::Not:
      return unary(e->op, ops[0]);
    case Op::Ite:
      return ite(ops[0], ops[1], ops[2]);
    case Op::ZExt:
      return zext(ops[0], e->width);
    case Op::SExt:
      return sext(ops[0], e->width);
    case Op::Extract:
      return extract(ops[0], e->hi, e->lo);
    case Op::Concat:
      return concat(ops[0], ops[1]);
    default:
      return binary(e->op, ops[0], ops[1]);
  }
}

Expr ExprPool::nonzero(Expr a) {
  if (a->width == 1) return a;
  return ne(a, constant(a->width, 0));
}

Expr ExprPool::conjunction(std::span<const Expr> parts) {
  if (parts.empty()) return truth();
  Expr acc = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) acc = bv_and(acc, parts[i]);
  return acc;
}

Expr ExprPool::disjunction(std::span<const Expr> parts) {
  if (parts.empty()) return falsity();
  Expr acc = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) acc = bv_or(acc, parts[i]);
  return acc;
}

Expr ExprPool::get(ExprId id) const {
  std::lock_guard lock(mu_);
  if (id == 0 || id > nodes_.size()) return nullptr;
  return &nodes_[id - 1];
}

std::size_t ExprPool::size() const {
  std::lock_guard lock(mu_);
  return nodes_.size();
}

Expr ExprPool::simplify(Expr e) {
  std::lock_guard lock(mu_);
  return simplify_locked(e);
}

Expr ExprPool::simplify_locked(Expr e) {
  if (auto it = simplified_.find(e->id); it != simplified_.end()) return it->second;
  Expr result = e;
  if (e->arity > 0) {
    std::array<Expr, 3> ops{};
    bool changed = false;
    for (std::size_t i = 0; i < e->arity; ++i) {
      ops[i] = simplify_locked(e->arg(i));
      changed |= ops[i] != e->arg(i);
    }
    Expr rebuilt = changed ? rebuild(e, {ops.data(), e->arity}) : e;
    Expr rewritten = rewrite(rebuilt);
    // A rewrite may expose further opportunities at the new root; every rule
    // strictly shrinks or canonicalizes, so this recursion terminates.
    result = rewritten == rebuilt ? rebuilt : simplify_locked(rewritten);
    simplified_.emplace(rebuilt->id, result);
  }
  simplified_.emplace(e->id, result);
  simplified_.emplace(result->id, result);
  return result;
}

// One local rewrite step over a node whose operands are already simplified.
// Returns `e` itself when no rule applies.
Expr ExprPool::rewrite(Expr e) {
  if (e->arity == 0) return e;
  const std::uint32_t w = e->width;

  bool all_const = true;
  std::array<std::uint64_t, 3> vals{};
  for (std::size_t i = 0; i < e->arity; ++i) {
    all_const &= e->arg(i)->is_const();
    vals[i] = e->arg(i)->value;
  }
  if (all_const) return constant(w, apply(e, {vals.data(), e->arity}));

  Expr a = e->arg(0);
  Expr b = e->arity > 1 ? e->arg(1) : nullptr;

  // Constants go to the right of commutative operators.
  if (commutative(e->op) && a->is_const() && !b->is_const()) {
    return binary(e->op, b, a);
  }

  switch (e->op) {
    case Op::Add:
      if (b->is_const(0)) return a;
      if (a->op == Op::Add && a->arg(1)->is_const() && b->is_const()) {
        return add(a->arg(0), constant(w, a->arg(1)->value + b->value));
      }
      break;
    case Op::Sub:
      if (b->is_const(0)) return a;
      if (a == b) return constant(w, 0);
      break;
    case Op::Mul:
      if (b->is_const(0)) return b;
      if (b->is_const(1)) return a;
      break;
    case Op::UDiv:
      if (b->is_const(1)) return a;
      if (b->is_const() && b->value != 0 && std::has_single_bit(b->value)) {
        return binary(Op::LShr, a, constant(w, std::countr_zero(b->value)));
      }
      break;
    case Op::URem:
      if (b->is_const(1)) return constant(w, 0);
      if (b->is_const() && b->value != 0 && std::has_single_bit(b->value)) {
        return bv_and(a, constant(w, b->value - 1));
      }
      break;
    case Op::And:
      if (b->is_const(0)) return b;
      if (is_ones(b)) return a;
      if (a == b) return a;
      if ((a->op == Op::Not && a->arg(0) == b) || (b->op == Op::Not && b->arg(0) == a)) {
        return constant(w, 0);
      }
      break;
    case Op::Or:
      if (b->is_const(0)) return a;
      if (is_ones(b)) return b;
      if (a == b) return a;
      if ((a->op == Op::Not && a->arg(0) == b) || (b->op == Op::Not && b->arg(0) == a)) {
        return constant(w, width_mask(w));
      }
      break;
    case Op::Xor:
      if (b->is_const(0)) return a;
      if (a == b) return constant(w, 0);
      if (is_ones(b)) return bv_not(a);
      break;
    case Op::Not:
      if (a->op == Op::Not) return a->arg(0);
      break;
    case Op::Shl:
    case Op::LShr:
      if (b->is_const(0)) return a;
      if (b->is_const() && b->value >= w) return constant(w, 0);
      break;
    case Op::AShr:
      if (b->is_const(0)) return a;
      break;
    case Op::Eq:
      if (a == b) return truth();
      if (a->width == 1 && b->is_const(1)) return a;
      if (a->width == 1 && b->is_const(0)) return bv_not(a);
      if (a->op == Op::ZExt && b->is_const()) {
        Expr inner = a->arg(0);
        if ((b->value & ~width_mask(inner->width)) != 0) return falsity();
        return eq(inner, constant(inner->width, b->value));
      }
      break;
    case Op::Ult:
      if (a == b || b->is_const(0)) return falsity();
      break;
    case Op::Slt:
      if (a == b) return falsity();
      break;
    case Op::Ite: {
      Expr t = e->arg(1);
      Expr f = e->arg(2);
      if (a->is_const()) return a->value ? t : f;
      if (t == f) return t;
      if (w == 1 && t->is_const(1) && f->is_const(0)) return a;
      if (w == 1 && t->is_const(0) && f->is_const(1)) return bv_not(a);
      break;
    }
    case Op::ZExt:
    case Op::SExt:
      if (a->width == w) return a;
      break;
    case Op::Extract: {
      if (e->lo == 0 && e->hi + 1 == a->width) return a;
      if (a->op == Op::Extract) return extract(a->arg(0), e->hi + a->lo, e->lo + a->lo);
      if (a->op == Op::Concat) {
        Expr ahi = a->arg(0);
        Expr alo = a->arg(1);
        if (e->hi < alo->width) return extract(alo, e->hi, e->lo);
        if (e->lo >= alo->width) return extract(ahi, e->hi - alo->width, e->lo - alo->width);
      }
      if (a->op == Op::ZExt) {
        Expr inner = a->arg(0);
        if (e->hi < inner->width) return extract(inner, e->hi, e->lo);
        if (e->lo >= inner->width) return constant(w, 0);
      }
      break;
    }
    case Op::Concat: {
      // Re-join adjacent slices of one value: concat(x[h1:l1], x[h2:l2]) with
      // l1 == h2 + 1, including when the low part is the head of a concat.
      auto adjacent = [](Expr hi_part, Expr lo_part) {
        return hi_part->op == Op::Extract && lo_part->op == Op::Extract &&
               hi_part->arg(0) == lo_part->arg(0) && hi_part->lo == lo_part->hi + 1;
      };
      if (adjacent(a, b)) return extract(a->arg(0), a->hi, b->lo);
      if (b->op == Op::Concat && adjacent(a, b->arg(0))) {
        return concat(extract(a->arg(0), a->hi, b->arg(0)->lo), b->arg(1));
      }
      break;
    }
    default:
      break;
  }
  return e;
}

namespace {

std::uint64_t eval_rec(Expr e, const Assignment& a,
                       std::unordered_map<Expr, std::uint64_t>& memo) {
  if (e->op == Op::Const) return e->value;
  if (e->op == Op::Var) {
    auto it = a.find(e->name);
    if (it == a.end()) throw Error("eval: no value for variable '" + e->name + "'");
    return it->second & width_mask(e->width);
  }
  if (auto it = memo.find(e); it != memo.end()) return it->second;
  std::array<std::uint64_t, 3> v{};
  for (std::size_t i = 0; i < e->arity; ++i) v[i] = eval_rec(e->arg(i), a, memo);
  const std::uint64_t r = apply(e, {v.data(), e->arity});
  memo.emplace(e, r);
  return r;
}

void collect_vars(Expr e, std::set<VarDecl>& out, std::set<ExprId>& seen) {
  if (!seen.insert(e->id).second) return;
  if (e->op == Op::Var) {
    out.emplace(e->name, e->width);
    return;
  }
  for (Expr arg : e->operands()) collect_vars(arg, out, seen);
}

void render(Expr e, std::string& out) {
  switch (e->op) {
    case Op::Const:
      out += "(const " + std::to_string(e->width) + " " + std::to_string(e->value) + ")";
      return;
    case Op::Var:
      out += "(var " + e->name + " " + std::to_string(e->width) + ")";
      return;
    case Op::ZExt:
    case Op::SExt:
      out += "(";
      out += op_name(e->op);
      out += " " + std::to_string(e->width) + " ";
      render(e->arg(0), out);
      out += ")";
      return;
    case Op::Extract:
      out += "(extract " + std::to_string(e->hi) + " " + std::to_string(e->lo) + " ";
      render(e->arg(0), out);
      out += ")";
      return;
    default:
      out += "(";
      out += op_name(e->op);
      for (Expr arg : e->operands()) {
        out += " ";
        render(arg, out);
      }
      out += ")";
  }
}

class SexprReader {
 public:
  SexprReader(ExprPool& pool, std::string_view text) : pool_(pool), text_(text) {}

  Expr read_all() {
    Expr e = read();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) {
    throw ParseError(0, "expression at offset " + std::to_string(pos_) + ": " + what);
  }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  std::string atom() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != '(' && text_[pos_] != ')' &&
           !std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    if (start == pos_) fail("expected atom");
    return std::string(text_.substr(start, pos_ - start));
  }
  std::uint64_t number() {
    std::string s = atom();
    try {
      std::size_t used = 0;
      std::uint64_t v = std::stoull(s, &used, 10);
      if (used != s.size()) fail("bad number '" + s + "'");
      return v;
    } catch (const std::logic_error&) {
      fail("bad number '" + s + "'");
    }
  }
  Expr read() {
    expect('(');
    const std::string head = atom();
    Expr result = nullptr;
    if (head == "const") {
      auto w = static_cast<std::uint32_t>(number());
      result = pool_.constant(w, number());
    } else if (head == "var") {
      std::string name = atom();
      result = pool_.var(name, static_cast<std::uint32_t>(number()));
    } else if (head == "zext" || head == "sext") {
      auto w = static_cast<std::uint32_t>(number());
      Expr a = read();
      result = head == "zext" ? pool_.zext(a, w) : pool_.sext(a, w);
    } else if (head == "extract") {
      auto hi = static_cast<std::uint32_t>(number());
      auto lo = static_cast<std::uint32_t>(number());
      result = pool_.extract(read(), hi, lo);
    } else if (head == "not") {
      result = pool_.bv_not(read());
    } else if (head == "ite") {
      Expr c = read();
      Expr t = read();
      result = pool_.ite(c, t, read());
    } else if (head == "concat") {
      Expr h = read();
      result = pool_.concat(h, read());
    } else {
      static const std::map<std::string, Op, std::less<>> kBinary = {
          {"add", Op::Add}, {"sub", Op::Sub},   {"mul", Op::Mul},   {"udiv", Op::UDiv},
          {"urem", Op::URem}, {"and", Op::And}, {"or", Op::Or},     {"xor", Op::Xor},
          {"shl", Op::Shl}, {"lshr", Op::LShr}, {"ashr", Op::AShr}, {"eq", Op::Eq},
          {"ult", Op::Ult}, {"slt", Op::Slt}};
      auto it = kBinary.find(head);
      if (it == kBinary.end()) fail("unknown operator '" + head + "'");
      Expr a = read();
      result = pool_.binary(it->second, a, read());
    }
    expect(')');
    return result;
  }

  ExprPool& pool_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::uint64_t eval(Expr e, const Assignment& a) {
  std::unordered_map<Expr, std::uint64_t> memo;
  return eval_rec(e, a, memo);
}

std::vector<std::uint64_t> eval_all(std::span<const Expr> roots, const Assignment& a) {
  std::unordered_map<Expr, std::uint64_t> memo;
  std::vector<std::uint64_t> out;
  out.reserve(roots.size());
  for (Expr e : roots) out.push_back(eval_rec(e, a, memo));
  return out;
}

std::set<VarDecl> free_vars(Expr e) { return free_vars(std::span<const Expr>(&e, 1)); }

std::set<VarDecl> free_vars(std::span<const Expr> roots) {
  std::set<VarDecl> out;
  std::set<ExprId> seen;
  for (Expr e : roots) collect_vars(e, out, seen);
  return out;
}

std::string to_string(Expr e) {
  std::string out;
  render(e, out);
  return out;
}

Expr parse_expr(ExprPool& pool, std::string_view text) {
  return SexprReader(pool, text).read_all();
}

}  // namespace twinsym
