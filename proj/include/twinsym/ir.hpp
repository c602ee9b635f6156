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

// The register-machine IR: program representation, text format, validation.
//
// Text format, one item per line, `;` starts a comment:
//
//   program insertion_sort        ; optional, default name "main"
//   mode wrap                     ; or `trap`; default wrap
//   reg i:32, key:8, c:1          ; declarations, widths 1/8/16/32
//   loop:                         ; labels end with ':'
//     add i, i, 1                 ; second source may be an immediate
//     load.8 key, [base+4]        ; [reg], [reg+imm], [reg-imm] or [imm]
//     br c, loop, done
//   done:
//     halt

#ifndef TWINSYM_IR_HPP_
#define TWINSYM_IR_HPP_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace twinsym {

inline constexpr std::uint32_t kAddressSpaceSize = 65536;
inline constexpr std::uint32_t kDefaultLoopBound = 64;

enum class OverflowMode { Wrap, Trap };

enum class Opcode {
  Const,
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
  CmpEq,
  CmpUlt,
  CmpSlt,
  Select,
  Br,
  Jmp,
  Load,
  Store,
  Observe,
  Assume,
  Assert,
  Halt,
};

std::string_view opcode_name(Opcode op);
std::optional<Opcode> opcode_from_name(std::string_view name);

/// Terminal (and running) status of an execution, concrete or symbolic.
enum class Status {
  Running,
  Finished,
  TrapOverflow,
  DivByZero,
  OutOfBoundsMem,
  SymbolicAddress,
  AssertFailed,
  AssumeUnsat,     // symbolic: assumption contradicts the path; pruned marker
  AssumeViolated,  // concrete: an `assume` operand was zero
  LoopBoundExceeded,
};

std::string_view status_name(Status s);
std::optional<Status> status_from_name(std::string_view name);

/// A register or an immediate source operand.
struct Operand {
  bool is_imm = false;
  std::uint32_t reg = 0;
  std::int64_t imm = 0;

  static Operand of_reg(std::uint32_t r) { return Operand{false, r, 0}; }
  static Operand of_imm(std::int64_t v) { return Operand{true, 0, v}; }
  bool operator==(const Operand&) const = default;
};

struct Instruction {
  Opcode op = Opcode::Halt;
  std::uint32_t dst = 0;            // destination register
  std::vector<Operand> srcs;        // opcode-specific order; see ir.cpp
  std::int64_t imm = 0;             // const
  std::optional<std::uint32_t> base;  // load/store base register
  std::int64_t offset = 0;          // load/store immediate offset
  std::uint32_t mem_width = 0;      // load/store width in bits
  std::vector<std::string> labels;  // br: {true, false}; jmp: {target}
  std::vector<std::uint32_t> targets;
  std::size_t line = 0;             // source line, not part of equality

  bool operator==(const Instruction& o) const {
    return op == o.op && dst == o.dst && srcs == o.srcs && imm == o.imm && base == o.base &&
           offset == o.offset && mem_width == o.mem_width && labels == o.labels &&
           targets == o.targets;
  }
};

struct Register {
  std::string name;
  std::uint32_t width = 0;
  bool operator==(const Register&) const = default;
};

struct Program {
  std::string name = "main";
  OverflowMode mode = OverflowMode::Wrap;
  std::vector<Register> registers;
  std::vector<Instruction> instructions;
  std::map<std::string, std::uint32_t> labels;

  std::optional<std::uint32_t> find_register(std::string_view reg) const;
  std::uint32_t width_of(std::uint32_t reg) const { return registers[reg].width; }
  bool operator==(const Program&) const = default;
};

struct Diagnostic {
  std::size_t line = 0;  // 0 when the program was not parsed from text
  std::string message;
};

struct Validation {
  std::vector<Diagnostic> diagnostics;
  /// Indices of branch/jump instructions that target themselves or an
  /// earlier instruction.
  std::set<std::uint32_t> back_edges;
  bool ok() const { return diagnostics.empty(); }
};

/// Parses and validates; throws ParseError on the first problem.
Program parse_program(std::string_view text);
Program load_program(const std::string& path);

/// Renders `p` in the text format; parse_program(print_program(p)) == p.
std::string print_program(const Program& p);

Validation validate(const Program& p);

}  // namespace twinsym

#endif  // TWINSYM_IR_HPP_
