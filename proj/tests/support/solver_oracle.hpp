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

// Solver checks against an exhaustive-enumeration oracle.

#ifndef TWINSYM_TESTS_SUPPORT_SOLVER_ORACLE_HPP_
#define TWINSYM_TESTS_SUPPORT_SOLVER_ORACLE_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "twinsym/expr.hpp"
#include "twinsym/solver.hpp"

namespace twinsym::testing {

/// Calls `fn` on every assignment of `vars`; stops early when fn returns true.
template <typename Fn>
bool for_each_assignment(std::span<const VarDecl> vars, Fn&& fn) {
  std::uint64_t total_bits = 0;
  for (const auto& v : vars) total_bits += v.second;
  const std::uint64_t count = std::uint64_t{1} << total_bits;
  Assignment a;
  for (std::uint64_t code = 0; code < count; ++code) {
    std::uint64_t rest = code;
    for (const auto& [name, width] : vars) {
      a[name] = rest & width_mask(width);
      rest >>= width;
    }
    if (fn(a)) return true;
  }
  return false;
}

inline bool satisfies(const ClauseSet& clauses, const Assignment& a) {
  for (Expr c : clauses) {
    if (eval(c, a) != 1) return false;
  }
  return true;
}

/// Brute-force satisfiability: some assignment of `vars` satisfies all clauses.
inline bool brute_force_sat(const ClauseSet& clauses, std::span<const VarDecl> vars) {
  return for_each_assignment(vars, [&](const Assignment& a) { return satisfies(clauses, a); });
}

}  // namespace twinsym::testing

#endif  // TWINSYM_TESTS_SUPPORT_SOLVER_ORACLE_HPP_
