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


// Harness: the operator-written description of one comparison. It names the
// two programs, declares the shared symbolic inputs and where each program
// expects them, and lists the annotated locations whose final contents are
// compared.

#ifndef TWINSYM_HARNESS_HPP_
#define TWINSYM_HARNESS_HPP_

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "twinsym/expr.hpp"
#include "twinsym/interpreter.hpp"
#include "twinsym/ir.hpp"

namespace twinsym {

enum class Side { Left = 0, Right = 1 };

inline std::size_t index(Side s) { return static_cast<std::size_t>(s); }
inline std::string_view side_name(Side s) { return s == Side::Left ? "left" : "right"; }

/// A memory range or a register of one program.
struct Location {
  std::optional<std::string> reg;
  std::uint32_t addr = 0;
  std::uint32_t bytes = 0;  // memory only

  bool is_reg() const { return reg.has_value(); }
  bool operator==(const Location&) const = default;
};

using NamePart = std::variant<std::string, std::int64_t>;

struct Annotation {
  std::vector<NamePart> name;
  std::array<Location, 2> at;  // indexed by Side

  /// Parts joined with '.', e.g. `out.0`.
  std::string display() const;
  bool operator==(const Annotation&) const = default;
};

struct DiffTargets {
  std::vector<std::string> annotations;  // display names
  bool status = true;
  bool io = true;
  /// Also emit shared-input concretions for pairs with no difference.
  bool concretize_equal = false;
  bool operator==(const DiffTargets&) const = default;
};

struct SolverConfig {
  std::string kind = "embedded";  // embedded | external
  std::string command = "z3 -in -smt2";
  bool core_minimize = true;
  std::uint64_t max_conflicts = 1'000'000;
  std::uint64_t timeout_ms = 30'000;
  bool operator==(const SolverConfig&) const = default;
};

struct Harness {
  std::array<std::string, 2> programs;  // paths as written
  std::string base_dir;                 // directory the paths are relative to
  std::vector<VarDecl> symbols;
  std::array<std::map<std::string, Location>, 2> placements;
  std::vector<Annotation> annotations;
  std::vector<std::string> assumptions;  // constraint text over symbols
  std::vector<std::string> assertions;   // constraint text over annotations and symbols
  std::uint32_t loop_bound = kDefaultLoopBound;
  std::uint32_t concretions = 3;
  DiffTargets diff;
  SolverConfig solver;

  std::string program_path(Side s) const;
  const Annotation* find_annotation(std::string_view display) const;
  std::optional<std::uint32_t> symbol_width(std::string_view name) const;
  bool operator==(const Harness&) const = default;
};

/// Parses a harness document. Structural problems throw ValidationError.
Harness parse_harness(std::string_view json_text, std::string base_dir = ".");
Harness load_harness(const std::string& path);
std::string harness_to_json(const Harness& h);

/// Checks the harness against the two programs it names: placements fit and
/// do not overlap, registers exist with matching widths, annotation lengths
/// agree, and constraint text only mentions known names. Throws
/// ValidationError naming the first problem.
void validate_harness(const Harness& h, const Program& left, const Program& right);

/// Resolves a free identifier of the constraint language to an expression.
using NameResolver = std::function<std::optional<Expr>(std::string_view)>;

/// Compiles one constraint of the infix language into a width-1 expression.
///
///   expr   := or
///   or     := and ('|' and)*
///   and    := cmp ('&' cmp)*
///   cmp    := sum (('<' | '<s' | '<=' | '>' | '>=' | '==' | '!=') sum)?
///   sum    := prod (('+' | '-') prod)*
///   prod   := unary ('*' unary)*
///   unary  := '~' unary | atom
///   atom   := name | number | '(' expr ')'
///
/// Literals take the width of the other operand. Throws ValidationError.
Expr compile_constraint(ExprPool& pool, std::string_view text, const NameResolver& resolve);

/// Harness assumptions as width-1 expressions over the symbol variables.
std::vector<Expr> compile_assumptions(ExprPool& pool, const Harness& h);

/// Concrete program input for one side under an assignment of the symbols.
ConcreteInput concrete_input(const Harness& h, Side side, const Assignment& symbols);

/// Concrete run of one side: the interpreter followed by the harness
/// assertions, which turn a Finished outcome into AssertFailed when violated.
ConcreteOutcome run_concrete(const Harness& h, Side side, const Program& program,
                             const Assignment& symbols);

/// Little-endian value of a location in a concrete outcome.
std::uint64_t read_location(const ConcreteOutcome& o, const Location& loc);

}  // namespace twinsym

#endif  // TWINSYM_HARNESS_HPP_
