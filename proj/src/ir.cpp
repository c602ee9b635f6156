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

#include "twinsym/ir.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "twinsym/error.hpp"

namespace twinsym {
namespace {

struct OpcodeInfo {
  Opcode op;
  std::string_view name;
};

constexpr OpcodeInfo kOpcodes[] = {
    {Opcode::Const, "const"},     {Opcode::Add, "add"},         {Opcode::Sub, "sub"},
    {Opcode::Mul, "mul"},         {Opcode::UDiv, "udiv"},       {Opcode::URem, "urem"},
    {Opcode::And, "and"},         {Opcode::Or, "or"},           {Opcode::Xor, "xor"},
    {Opcode::Not, "not"},         {Opcode::Shl, "shl"},         {Opcode::LShr, "lshr"},
    {Opcode::AShr, "ashr"},       {Opcode::CmpEq, "cmp_eq"},    {Opcode::CmpUlt, "cmp_ult"},
    {Opcode::CmpSlt, "cmp_slt"},  {Opcode::Select, "select"},   {Opcode::Br, "br"},
    {Opcode::Jmp, "jmp"},         {Opcode::Load, "load"},       {Opcode::Store, "store"},
    {Opcode::Observe, "observe"}, {Opcode::Assume, "assume"},   {Opcode::Assert, "assert"},
    {Opcode::Halt, "halt"},
};

constexpr std::pair<Status, std::string_view> kStatuses[] = {
    {Status::Running, "Running"},
    {Status::Finished, "Finished"},
    {Status::TrapOverflow, "TrapOverflow"},
    {Status::DivByZero, "DivByZero"},
    {Status::OutOfBoundsMem, "OutOfBoundsMem"},
    {Status::SymbolicAddress, "SymbolicAddress"},
    {Status::AssertFailed, "AssertFailed"},
    {Status::AssumeUnsat, "AssumeUnsat"},
    {Status::AssumeViolated, "AssumeViolated"},
    {Status::LoopBoundExceeded, "LoopBoundExceeded"},
};

bool is_binary(Opcode op) {
  switch (op) {
    case Opcode::Add: case Opcode::Sub: case Opcode::Mul: case Opcode::UDiv:
    case Opcode::URem: case Opcode::And: case Opcode::Or: case Opcode::Xor:
    case Opcode::Shl: case Opcode::LShr: case Opcode::AShr:
      return true;
    default:
      return false;
  }
}

bool is_compare(Opcode op) {
  return op == Opcode::CmpEq || op == Opcode::CmpUlt || op == Opcode::CmpSlt;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool is_ident(std::string_view s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
  });
}

std::optional<std::int64_t> parse_int(std::string_view s) {
  s = trim(s);
  bool neg = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    neg = s[0] == '-';
    s.remove_prefix(1);
  }
  int base = 10;
  if (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) {
    base = 16;
    s.remove_prefix(2);
  }
  if (s.empty()) return std::nullopt;
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v, base);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  if (v > static_cast<std::uint64_t>(INT64_MAX)) return std::nullopt;
  const auto sv = static_cast<std::int64_t>(v);
  return neg ? -sv : sv;
}

std::vector<std::string_view> split_operands(std::string_view s) {
  std::vector<std::string_view> out;
  s = trim(s);
  if (s.empty()) return out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == ',') {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

// Instruction with names still unresolved.
struct RawInstruction {
  Instruction inst;
  std::vector<std::string> reg_names;  // dst first when the opcode has one
  std::vector<bool> reg_slot_is_imm;
  std::optional<std::string> addr_base;  // "" for an absolute address
};

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Program run() {
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text_.size()) {
      std::size_t nl = text_.find('\n', pos);
      if (nl == std::string_view::npos) nl = text_.size();
      ++line_no;
      parse_line(text_.substr(pos, nl - pos), line_no);
      pos = nl + 1;
    }
    resolve();
    return std::move(prog_);
  }

 private:
  [[noreturn]] void fail(std::size_t line, const std::string& what) { throw ParseError(line, what); }

  void parse_line(std::string_view line, std::size_t no) {
    if (auto semi = line.find(';'); semi != std::string_view::npos) line = line.substr(0, semi);
    line = trim(line);
    // Leading labels.
    for (;;) {
      auto colon = line.find(':');
      if (colon == std::string_view::npos) break;
      std::string_view head = trim(line.substr(0, colon));
      if (!is_ident(head) || head.find(' ') != std::string_view::npos) break;
      // `reg x:8` also contains a colon; labels are a single identifier.
      if (line.substr(0, colon).find_first_of(" \t") != std::string_view::npos) break;
      std::string name(head);
      if (prog_.labels.count(name)) fail(no, "duplicate label '" + name + "'");
      prog_.labels[name] = static_cast<std::uint32_t>(raw_.size());
      line = trim(line.substr(colon + 1));
    }
    if (line.empty()) return;

    const std::size_t sp = line.find_first_of(" \t");
    const std::string_view word = line.substr(0, sp);
    const std::string_view rest = sp == std::string_view::npos ? "" : trim(line.substr(sp));

    if (word == "program") {
      if (!is_ident(rest)) fail(no, "bad program name");
      prog_.name = std::string(rest);
      return;
    }
    if (word == "mode") {
      if (rest == "wrap") prog_.mode = OverflowMode::Wrap;
      else if (rest == "trap") prog_.mode = OverflowMode::Trap;
      else fail(no, "mode must be 'wrap' or 'trap'");
      return;
    }
    if (word == "reg") {
      for (std::string_view decl : split_operands(rest)) {
        auto colon = decl.find(':');
        if (colon == std::string_view::npos) fail(no, "register declaration needs name:width");
        std::string_view name = trim(decl.substr(0, colon));
        auto width = parse_int(decl.substr(colon + 1));
        if (!is_ident(name) || !width || *width <= 0) fail(no, "bad register declaration");
        if (prog_.find_register(name)) fail(no, "register '" + std::string(name) + "' declared twice");
        prog_.registers.push_back({std::string(name), static_cast<std::uint32_t>(*width)});
      }
      return;
    }
    parse_instruction(word, rest, no);
  }

  void parse_instruction(std::string_view word, std::string_view rest, std::size_t no) {
    RawInstruction raw;
    Instruction& inst = raw.inst;
    inst.line = no;
    std::string_view mnemonic = word;
    if (word.starts_with("load.") || word.starts_with("store.")) {
      const auto dot = word.find('.');
      mnemonic = word.substr(0, dot);
      auto w = parse_int(word.substr(dot + 1));
      if (!w || *w <= 0) fail(no, "bad memory width in '" + std::string(word) + "'");
      inst.mem_width = static_cast<std::uint32_t>(*w);
    }
    auto op = opcode_from_name(mnemonic);
    if (!op || ((*op == Opcode::Load || *op == Opcode::Store) && inst.mem_width == 0)) {
      fail(no, "unknown instruction '" + std::string(word) + "'");
    }
    inst.op = *op;
    const auto ops = split_operands(rest);
    auto need = [&](std::size_t n) {
      if (ops.size() != n) {
        fail(no, std::string(word) + " expects " + std::to_string(n) + " operand(s), got " +
                     std::to_string(ops.size()));
      }
    };
    auto reg = [&](std::string_view s) {
      if (!is_ident(s)) fail(no, "expected register, got '" + std::string(s) + "'");
      raw.reg_names.emplace_back(s);
      raw.reg_slot_is_imm.push_back(false);
    };
    auto reg_or_imm = [&](std::string_view s) {
      if (auto v = parse_int(s)) {
        raw.reg_names.emplace_back();
        raw.reg_slot_is_imm.push_back(true);
        inst.srcs.push_back(Operand::of_imm(*v));
        return;
      }
      reg(s);
      inst.srcs.push_back(Operand::of_reg(0));
    };
    auto src_reg = [&](std::string_view s) {
      reg(s);
      inst.srcs.push_back(Operand::of_reg(0));
    };
    auto label = [&](std::string_view s) {
      if (!is_ident(s)) fail(no, "expected label, got '" + std::string(s) + "'");
      inst.labels.emplace_back(s);
    };

    switch (inst.op) {
      case Opcode::Const: {
        need(2);
        reg(ops[0]);
        auto v = parse_int(ops[1]);
        if (!v) fail(no, "const expects an integer immediate");
        inst.imm = *v;
        break;
      }
      case Opcode::Not:
        need(2);
        reg(ops[0]);
        src_reg(ops[1]);
        break;
      case Opcode::Select:
        need(4);
        reg(ops[0]);
        src_reg(ops[1]);
        src_reg(ops[2]);
        src_reg(ops[3]);
        break;
      case Opcode::Br:
        need(3);
        src_reg(ops[0]);
        label(ops[1]);
        label(ops[2]);
        break;
      case Opcode::Jmp:
        need(1);
        label(ops[0]);
        break;
      case Opcode::Load:
        need(2);
        reg(ops[0]);
        parse_address(ops[1], raw, no);
        break;
      case Opcode::Store:
        need(2);
        parse_address(ops[0], raw, no);
        src_reg(ops[1]);
        break;
      case Opcode::Observe:
      case Opcode::Assume:
      case Opcode::Assert:
        need(1);
        src_reg(ops[0]);
        break;
      case Opcode::Halt:
        need(0);
        break;
      default:
        if (!is_binary(inst.op) && !is_compare(inst.op)) fail(no, "unhandled opcode");
        need(3);
        reg(ops[0]);
        src_reg(ops[1]);
        reg_or_imm(ops[2]);
        break;
    }
    raw_.push_back(std::move(raw));
  }

  // `[reg]`, `[reg+imm]`, `[reg-imm]` or `[imm]`.
  void parse_address(std::string_view s, RawInstruction& raw, std::size_t no) {
    if (s.size() < 2 || s.front() != '[' || s.back() != ']') fail(no, "expected [address]");
    s = trim(s.substr(1, s.size() - 2));
    if (auto v = parse_int(s)) {
      raw.inst.offset = *v;
      raw.addr_base = "";
      return;
    }
    std::size_t split = s.find_first_of("+-");
    std::string_view base = trim(s.substr(0, split));
    if (!is_ident(base)) fail(no, "bad address base '" + std::string(base) + "'");
    raw.addr_base = std::string(base);
    if (split != std::string_view::npos) {
      auto off = parse_int(s.substr(split));
      if (!off) fail(no, "bad address offset");
      raw.inst.offset = *off;
    }
  }

  std::uint32_t lookup(const std::string& name, std::size_t no) {
    auto r = prog_.find_register(name);
    if (!r) fail(no, "undeclared register '" + name + "'");
    return *r;
  }

  void resolve() {
    for (RawInstruction& raw : raw_) {
      Instruction& inst = raw.inst;
      const std::size_t no = inst.line;
      std::size_t slot = 0;
      std::size_t src = 0;
      const bool has_dst = inst.op == Opcode::Const || inst.op == Opcode::Not ||
                           inst.op == Opcode::Select || inst.op == Opcode::Load ||
                           is_binary(inst.op) || is_compare(inst.op);
      if (has_dst) inst.dst = lookup(raw.reg_names[slot++], no);
      for (; slot < raw.reg_names.size(); ++slot, ++src) {
        if (raw.reg_slot_is_imm[slot]) continue;
        inst.srcs[src].reg = lookup(raw.reg_names[slot], no);
      }
      if (raw.addr_base && !raw.addr_base->empty()) inst.base = lookup(*raw.addr_base, no);
      for (const std::string& l : inst.labels) {
        auto it = prog_.labels.find(l);
        if (it == prog_.labels.end()) fail(no, "undefined label '" + l + "'");
        inst.targets.push_back(it->second);
      }
      prog_.instructions.push_back(std::move(inst));
    }
    Validation v = validate(prog_);
    if (!v.ok()) fail(v.diagnostics.front().line, v.diagnostics.front().message);
  }

  std::string_view text_;
  Program prog_;
  std::vector<RawInstruction> raw_;
};

}  // namespace

std::string_view opcode_name(Opcode op) {
  for (const auto& info : kOpcodes) {
    if (info.op == op) return info.name;
  }
  return "?";
}

std::optional<Opcode> opcode_from_name(std::string_view name) {
  for (const auto& info : kOpcodes) {
    if (info.name == name) return info.op;
  }
  return std::nullopt;
}

std::string_view status_name(Status s) {
  for (const auto& [st, name] : kStatuses) {
    if (st == s) return name;
  }
  return "?";
}

std::optional<Status> status_from_name(std::string_view name) {
  for (const auto& [st, n] : kStatuses) {
    if (n == name) return st;
  }
  return std::nullopt;
}

std::optional<std::uint32_t> Program::find_register(std::string_view reg) const {
  for (std::size_t i = 0; i < registers.size(); ++i) {
    if (registers[i].name == reg) return static_cast<std::uint32_t>(i);
  }
  return std::nullopt;
}

Program parse_program(std::string_view text) { return Parser(text).run(); }

Program load_program(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open program file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_program(ss.str());
  } catch (const ParseError& e) {
    throw ParseError(e.line(), path + ": " + std::string(e.what()));
  }
}

Validation validate(const Program& p) {
  Validation v;
  auto diag = [&](const Instruction* inst, std::string msg) {
    v.diagnostics.push_back({inst ? inst->line : 0, std::move(msg)});
  };
  auto valid_width = [](std::uint32_t w) { return w == 1 || w == 8 || w == 16 || w == 32; };

  std::set<std::string> names;
  for (const Register& r : p.registers) {
    if (!valid_width(r.width)) {
      diag(nullptr, "register '" + r.name + "' has width " + std::to_string(r.width) +
                        "; widths must be 1, 8, 16 or 32");
    }
    if (!names.insert(r.name).second) diag(nullptr, "register '" + r.name + "' declared twice");
  }
  if (!v.ok()) return v;

  const auto nregs = static_cast<std::uint32_t>(p.registers.size());
  const auto ninstr = static_cast<std::uint32_t>(p.instructions.size());
  for (const auto& [label, target] : p.labels) {
    if (target > ninstr) diag(nullptr, "label '" + label + "' points past the program end");
  }

  for (std::uint32_t idx = 0; idx < ninstr; ++idx) {
    const Instruction& inst = p.instructions[idx];
    const std::string where = std::string(opcode_name(inst.op)) + " at instruction " + std::to_string(idx);
    auto reg_ok = [&](std::uint32_t r) {
      if (r >= nregs) {
        diag(&inst, where + ": register index out of range");
        return false;
      }
      return true;
    };
    auto width = [&](const Operand& o, std::uint32_t fallback) {
      return o.is_imm ? fallback : p.registers[o.reg].width;
    };
    auto imm_fits = [&](std::int64_t value, std::uint32_t w) {
      if (w >= 64) return;
      const std::int64_t lo = -(std::int64_t{1} << (w - 1));
      const std::int64_t hi = (std::int64_t{1} << w) - 1;
      if (value < lo || value > hi) {
        diag(&inst, where + ": immediate " + std::to_string(value) + " does not fit " +
                        std::to_string(w) + " bits");
      }
    };
    bool regs_valid = true;
    for (const Operand& o : inst.srcs) {
      if (!o.is_imm) regs_valid &= reg_ok(o.reg);
    }
    if (inst.base) regs_valid &= reg_ok(*inst.base);
    const bool has_dst = inst.op == Opcode::Const || inst.op == Opcode::Not ||
                         inst.op == Opcode::Select || inst.op == Opcode::Load ||
                         is_binary(inst.op) || is_compare(inst.op);
    if (has_dst) regs_valid &= reg_ok(inst.dst);
    if (!regs_valid) continue;

    auto expect_srcs = [&](std::size_t n) {
      if (inst.srcs.size() != n) {
        diag(&inst, where + ": expected " + std::to_string(n) + " source operand(s)");
        return false;
      }
      return true;
    };
    const std::uint32_t dw = has_dst ? p.registers[inst.dst].width : 0;

    switch (inst.op) {
      case Opcode::Const:
        imm_fits(inst.imm, dw);
        break;
      case Opcode::Not:
        if (expect_srcs(1) && width(inst.srcs[0], dw) != dw) diag(&inst, where + ": width mismatch");
        break;
      case Opcode::Select:
        if (expect_srcs(3) && (inst.srcs[0].is_imm || width(inst.srcs[1], dw) != dw ||
                               width(inst.srcs[2], dw) != dw)) {
          diag(&inst, where + ": width mismatch");
        }
        break;
      case Opcode::CmpEq:
      case Opcode::CmpUlt:
      case Opcode::CmpSlt:
        if (expect_srcs(2)) {
          if (inst.srcs[0].is_imm) {
            diag(&inst, where + ": first source must be a register");
            break;
          }
          const std::uint32_t aw = width(inst.srcs[0], 0);
          if (width(inst.srcs[1], aw) != aw) diag(&inst, where + ": width mismatch");
          if (inst.srcs[1].is_imm) imm_fits(inst.srcs[1].imm, aw);
        }
        break;
      case Opcode::Br:
        if (inst.targets.size() != 2) diag(&inst, where + ": needs two targets");
        [[fallthrough]];
      case Opcode::Observe:
      case Opcode::Assume:
      case Opcode::Assert:
        if (expect_srcs(1) && inst.srcs[0].is_imm) diag(&inst, where + ": operand must be a register");
        break;
      case Opcode::Jmp:
        if (inst.targets.size() != 1) diag(&inst, where + ": needs one target");
        break;
      case Opcode::Load:
      case Opcode::Store: {
        const std::uint32_t mw = inst.mem_width;
        if (mw != 8 && mw != 16 && mw != 32) {
          diag(&inst, where + ": memory width " + std::to_string(mw) + " not in {8, 16, 32}");
          break;
        }
        if (inst.op == Opcode::Load && dw != mw) diag(&inst, where + ": width mismatch");
        if (inst.op == Opcode::Store && expect_srcs(1) &&
            (inst.srcs[0].is_imm || width(inst.srcs[0], 0) != mw)) {
          diag(&inst, where + ": width mismatch");
        }
        if (inst.offset < INT32_MIN || inst.offset > UINT32_MAX) diag(&inst, where + ": offset out of range");
        break;
      }
      case Opcode::Halt:
        break;
      default:  // binary arithmetic
        if (expect_srcs(2)) {
          if (inst.srcs[0].is_imm) {
            diag(&inst, where + ": first source must be a register");
            break;
          }
          if (width(inst.srcs[0], dw) != dw || width(inst.srcs[1], dw) != dw) {
            diag(&inst, where + ": width mismatch");
          }
          if (inst.srcs[1].is_imm) imm_fits(inst.srcs[1].imm, dw);
        }
        break;
    }
    for (std::uint32_t t : inst.targets) {
      if (t > ninstr) diag(&inst, where + ": branch target out of range");
      if (t <= idx) v.back_edges.insert(idx);
    }
  }
  return v;
}

std::string print_program(const Program& p) {
  std::ostringstream out;
  out << "program " << p.name << "\n";
  out << "mode " << (p.mode == OverflowMode::Wrap ? "wrap" : "trap") << "\n";
  for (const Register& r : p.registers) out << "reg " << r.name << ":" << r.width << "\n";
  std::multimap<std::uint32_t, std::string> by_index;
  for (const auto& [name, idx] : p.labels) by_index.emplace(idx, name);
  auto reg = [&](std::uint32_t r) { return p.registers[r].name; };
  auto operand = [&](const Operand& o) { return o.is_imm ? std::to_string(o.imm) : reg(o.reg); };
  auto address = [&](const Instruction& inst) {
    std::string s = "[";
    if (inst.base) {
      s += reg(*inst.base);
      if (inst.offset > 0) s += "+" + std::to_string(inst.offset);
      if (inst.offset < 0) s += std::to_string(inst.offset);
    } else {
      s += std::to_string(inst.offset);
    }
    return s + "]";
  };
  for (std::uint32_t i = 0; i <= p.instructions.size(); ++i) {
    auto [lo, hi] = by_index.equal_range(i);
    for (auto it = lo; it != hi; ++it) out << it->second << ":\n";
    if (i == p.instructions.size()) break;
    const Instruction& inst = p.instructions[i];
    out << "  " << opcode_name(inst.op);
    if (inst.op == Opcode::Load || inst.op == Opcode::Store) out << "." << inst.mem_width;
    switch (inst.op) {
      case Opcode::Const:
        out << " " << reg(inst.dst) << ", " << inst.imm;
        break;
      case Opcode::Not:
        out << " " << reg(inst.dst) << ", " << operand(inst.srcs[0]);
        break;
      case Opcode::Select:
        out << " " << reg(inst.dst) << ", " << operand(inst.srcs[0]) << ", "
            << operand(inst.srcs[1]) << ", " << operand(inst.srcs[2]);
        break;
      case Opcode::Br:
        out << " " << operand(inst.srcs[0]) << ", " << inst.labels[0] << ", " << inst.labels[1];
        break;
      case Opcode::Jmp:
        out << " " << inst.labels[0];
        break;
      case Opcode::Load:
        out << " " << reg(inst.dst) << ", " << address(inst);
        break;
      case Opcode::Store:
        out << " " << address(inst) << ", " << operand(inst.srcs[0]);
        break;
      case Opcode::Observe:
      case Opcode::Assume:
      case Opcode::Assert:
        out << " " << operand(inst.srcs[0]);
        break;
      case Opcode::Halt:
        break;
      default:
        out << " " << reg(inst.dst) << ", " << operand(inst.srcs[0]) << ", " << operand(inst.srcs[1]);
        break;
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace twinsym
