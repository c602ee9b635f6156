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

// Translation of bitvector expressions into CNF over a sat::Solver.

#ifndef TWINSYM_BITBLAST_HPP_
#define TWINSYM_BITBLAST_HPP_

#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "twinsym/expr.hpp"
#include "twinsym/sat.hpp"

namespace twinsym {

class BitBlaster {
 public:
  using Bits = std::vector<sat::Lit>;  // index 0 is the least significant bit

  explicit BitBlaster(sat::Solver& solver);

  /// Literals for every bit of `e`, memoized per node.
  const Bits& bits(Expr e);
  /// The single literal of a width-1 expression.
  sat::Lit literal(Expr e);

  /// Bits allocated for each variable encountered so far.
  const std::map<std::string, std::pair<std::uint32_t, Bits>>& vars() const { return vars_; }

  /// Value of `name` in the solver's current model.
  std::uint64_t model_value(const std::string& name) const;

  sat::Lit true_lit() const { return true_; }
  sat::Lit false_lit() const { return ~true_; }

 private:
  sat::Lit fresh();
  sat::Lit and2(sat::Lit a, sat::Lit b);
  sat::Lit or2(sat::Lit a, sat::Lit b) { return ~and2(~a, ~b); }
  sat::Lit xor2(sat::Lit a, sat::Lit b);
  sat::Lit mux(sat::Lit c, sat::Lit t, sat::Lit f);
  sat::Lit and_all(const Bits& xs);
  bool is_true(sat::Lit l) const { return l == true_; }
  bool is_false(sat::Lit l) const { return l == ~true_; }

  Bits add(const Bits& a, const Bits& b, sat::Lit carry_in, sat::Lit* carry_out = nullptr);
  Bits negate_bits(const Bits& a);
  Bits mul(const Bits& a, const Bits& b);
  void divide(const Bits& a, const Bits& b, Bits& quot, Bits& rem);
  Bits shift(Op op, const Bits& a, const Bits& amount);
  sat::Lit ult(const Bits& a, const Bits& b);
  sat::Lit equal(const Bits& a, const Bits& b);
  Bits blast(Expr e);

  sat::Solver& solver_;
  sat::Lit true_;
  std::unordered_map<ExprId, Bits> cache_;
  std::map<std::pair<int, int>, sat::Lit> and_cache_;
  std::map<std::string, std::pair<std::uint32_t, Bits>> vars_;
};

}  // namespace twinsym

#endif  // TWINSYM_BITBLAST_HPP_
