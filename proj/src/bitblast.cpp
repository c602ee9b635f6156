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

#include "twinsym/bitblast.hpp"

#include <algorithm>

#include "twinsym/error.hpp"

namespace twinsym {

using sat::Lit;

BitBlaster::BitBlaster(sat::Solver& solver) : solver_(solver) {
  true_ = Lit::make(solver_.new_var());
  solver_.add_clause({true_});
}

Lit BitBlaster::fresh() { return Lit::make(solver_.new_var()); }

Lit BitBlaster::and2(Lit a, Lit b) {
  if (is_false(a) || is_false(b)) return false_lit();
  if (is_true(a)) return b;
  if (is_true(b)) return a;
  if (a == b) return a;
  if (a == ~b) return false_lit();
  if (b < a) std::swap(a, b);
  auto key = std::make_pair(a.x, b.x);
  if (auto it = and_cache_.find(key); it != and_cache_.end()) return it->second;
  const Lit g = fresh();
  solver_.add_clause({~g, a});
  solver_.add_clause({~g, b});
  solver_.add_clause({g, ~a, ~b});
  and_cache_.emplace(key, g);
  return g;
}

Lit BitBlaster::xor2(Lit a, Lit b) {
  if (is_false(a)) return b;
  if (is_false(b)) return a;
  if (is_true(a)) return ~b;
  if (is_true(b)) return ~a;
  if (a == b) return false_lit();
  if (a == ~b) return true_;
  const Lit g = fresh();
  solver_.add_clause({~g, a, b});
  solver_.add_clause({~g, ~a, ~b});
  solver_.add_clause({g, ~a, b});
  solver_.add_clause({g, a, ~b});
  return g;
}

Lit BitBlaster::mux(Lit c, Lit t, Lit f) {
  if (is_true(c)) return t;
  if (is_false(c)) return f;
  if (t == f) return t;
  return or2(and2(c, t), and2(~c, f));
}

Lit BitBlaster::and_all(const Bits& xs) {
  Lit acc = true_;
  for (Lit x : xs) acc = and2(acc, x);
  return acc;
}

BitBlaster::Bits BitBlaster::add(const Bits& a, const Bits& b, Lit carry, Lit* carry_out) {
  Bits out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Lit axb = xor2(a[i], b[i]);
    out[i] = xor2(axb, carry);
    carry = or2(and2(a[i], b[i]), and2(carry, axb));
  }
  if (carry_out) *carry_out = carry;
  return out;
}

BitBlaster::Bits BitBlaster::negate_bits(const Bits& a) {
  Bits out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = ~a[i];
  return out;
}

BitBlaster::Bits BitBlaster::mul(const Bits& a, const Bits& b) {
  const std::size_t w = a.size();
  Bits acc(w, false_lit());
  for (std::size_t i = 0; i < w; ++i) {
    if (is_false(b[i])) continue;
    Bits partial(w, false_lit());
    for (std::size_t j = 0; j + i < w; ++j) partial[j + i] = and2(a[j], b[i]);
    acc = add(acc, partial, false_lit());
  }
  return acc;
}

// Restoring division. With a zero divisor every trial subtraction succeeds,
// which yields an all-ones quotient and the dividend as remainder.
void BitBlaster::divide(const Bits& a, const Bits& b, Bits& quot, Bits& rem) {
  const std::size_t w = a.size();
  Bits r(w + 1, false_lit());
  Bits d = b;
  d.push_back(false_lit());
  quot.assign(w, false_lit());
  for (std::size_t step = w; step-- > 0;) {
    // r = (r << 1) | a[step]
    for (std::size_t k = w; k > 0; --k) r[k] = r[k - 1];
    r[0] = a[step];
    Lit no_borrow;
    Bits diff = add(r, negate_bits(d), true_, &no_borrow);
    quot[step] = no_borrow;
    for (std::size_t k = 0; k <= w; ++k) r[k] = mux(no_borrow, diff[k], r[k]);
  }
  rem.assign(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(w));
}

BitBlaster::Bits BitBlaster::shift(Op op, const Bits& a, const Bits& amount) {
  const std::size_t w = a.size();
  const Lit fill = op == Op::AShr ? a[w - 1] : false_lit();
  Bits cur = a;
  Lit too_far = false_lit();
  for (std::size_t k = 0; k < amount.size(); ++k) {
    const std::uint64_t dist = k < 63 ? (std::uint64_t{1} << k) : ~std::uint64_t{0};
    if (dist >= w) {
      too_far = or2(too_far, amount[k]);
      continue;
    }
    Bits next(w);
    for (std::size_t i = 0; i < w; ++i) {
      Lit moved;
      if (op == Op::Shl) {
        moved = i >= dist ? cur[i - dist] : false_lit();
      } else {
        moved = i + dist < w ? cur[i + dist] : fill;
      }
      next[i] = mux(amount[k], moved, cur[i]);
    }
    cur = std::move(next);
  }
  for (std::size_t i = 0; i < w; ++i) cur[i] = mux(too_far, fill, cur[i]);
  return cur;
}

Lit BitBlaster::ult(const Bits& a, const Bits& b) {
  Lit lt = false_lit();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Lit here = and2(~a[i], b[i]);
    const Lit same = ~xor2(a[i], b[i]);
    lt = or2(here, and2(same, lt));
  }
  return lt;
}

Lit BitBlaster::equal(const Bits& a, const Bits& b) {
  Bits eqs(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) eqs[i] = ~xor2(a[i], b[i]);
  return and_all(eqs);
}

const BitBlaster::Bits& BitBlaster::bits(Expr e) {
  if (auto it = cache_.find(e->id); it != cache_.end()) return it->second;
  // Operands first so recursion depth only follows unvisited nodes.
  for (Expr arg : e->operands()) bits(arg);
  Bits b = blast(e);
  return cache_.emplace(e->id, std::move(b)).first->second;
}

Lit BitBlaster::literal(Expr e) {
  if (e->width != 1) throw WidthError("bitblast: clause must have width 1");
  return bits(e)[0];
}

BitBlaster::Bits BitBlaster::blast(Expr e) {
  const std::size_t w = e->width;
  auto arg = [&](std::size_t i) -> const Bits& { return cache_.at(e->arg(i)->id); };
  switch (e->op) {
    case Op::Const: {
      Bits out(w);
      for (std::size_t i = 0; i < w; ++i) out[i] = ((e->value >> i) & 1) ? true_ : false_lit();
      return out;
    }
    case Op::Var: {
      auto it = vars_.find(e->name);
      if (it != vars_.end()) {
        if (it->second.first != e->width) {
          throw WidthError("variable '" + e->name + "' used at two widths");
        }
        return it->second.second;
      }
      Bits out(w);
      for (auto& l : out) l = fresh();
      vars_.emplace(e->name, std::make_pair(e->width, out));
      return out;
    }
    case Op::Add:
      return add(arg(0), arg(1), false_lit());
    case Op::Sub:
      return add(arg(0), negate_bits(arg(1)), true_);
    case Op::Mul:
      return mul(arg(0), arg(1));
    case Op::UDiv:
    case Op::URem: {
      Bits q;
      Bits r;
      divide(arg(0), arg(1), q, r);
      return e->op == Op::UDiv ? q : r;
    }
    case Op::And:
    case Op::Or:
    case Op::Xor: {
      Bits out(w);
      for (std::size_t i = 0; i < w; ++i) {
        const Lit x = arg(0)[i];
        const Lit y = arg(1)[i];
        out[i] = e->op == Op::And ? and2(x, y) : e->op == Op::Or ? or2(x, y) : xor2(x, y);
      }
      return out;
    }
    case Op::Not:
      return negate_bits(arg(0));
    case Op::Shl:
    case Op::LShr:
    case Op::AShr:
      return shift(e->op, arg(0), arg(1));
    case Op::Eq:
      return {equal(arg(0), arg(1))};
    case Op::Ult:
      return {ult(arg(0), arg(1))};
    case Op::Slt: {
      Bits a = arg(0);
      Bits b = arg(1);
      a.back() = ~a.back();
      b.back() = ~b.back();
      return {ult(a, b)};
    }
    case Op::Ite: {
      Bits out(w);
      const Lit c = arg(0)[0];
      for (std::size_t i = 0; i < w; ++i) out[i] = mux(c, arg(1)[i], arg(2)[i]);
      return out;
    }
    case Op::ZExt:
    case Op::SExt: {
      Bits out = arg(0);
      const Lit fill = e->op == Op::ZExt ? false_lit() : out.back();
      out.resize(w, fill);
      return out;
    }
    case Op::Extract: {
      const Bits& a = arg(0);
      return Bits(a.begin() + e->lo, a.begin() + e->hi + 1);
    }
    case Op::Concat: {
      Bits out = arg(1);
      out.insert(out.end(), arg(0).begin(), arg(0).end());
      return out;
    }
  }
  throw Error("bitblast: unhandled operator");
}

std::uint64_t BitBlaster::model_value(const std::string& name) const {
  auto it = vars_.find(name);
  if (it == vars_.end()) return 0;
  std::uint64_t v = 0;
  const Bits& b = it->second.second;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (solver_.model_value(b[i])) v |= std::uint64_t{1} << i;
  }
  return v;
}

}  // namespace twinsym
