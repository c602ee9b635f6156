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


// Bridge to an external solver process speaking SMT-LIB 2 (QF_BV).

#ifndef TWINSYM_SMTLIB_HPP_
#define TWINSYM_SMTLIB_HPP_

#include <memory>
#include <string>

#include "twinsym/harness.hpp"
#include "twinsym/solver.hpp"

namespace twinsym {

/// Renders the query as a complete SMT-LIB 2 script. Clause i is asserted
/// under the name `c<i>`; every compound node becomes a `define-fun`.
std::string smtlib_script(const std::vector<Expr>& clauses, bool want_model, bool want_core,
                          std::uint64_t timeout_ms);

/// Runs `command` (through /bin/sh) once per query with the script on
/// standard input. Unsat cores are minimized by deletion when enabled.
class SmtLibSolver final : public Solver {
 public:
  SmtLibSolver(std::string command, SolverOptions options = {})
      : Solver(options), command_(std::move(command)) {}
  SolveResult is_sat(const ClauseSet& clauses, bool want_core = true) const override;
  const std::string& command() const { return command_; }

 private:
  SolveResult run(const std::vector<Expr>& clauses, bool want_model, bool want_core) const;
  std::string command_;
};

/// True when the first word of `command` resolves to an executable.
bool solver_command_available(const std::string& command);

/// The solver a harness asks for.
std::unique_ptr<Solver> make_solver(const SolverConfig& config, std::uint64_t seed = 0);

}  // namespace twinsym

#endif  // TWINSYM_SMTLIB_HPP_
