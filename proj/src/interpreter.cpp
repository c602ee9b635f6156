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

#include "twinsym/interpreter.hpp"

#include "twinsym/error.hpp"
#include "twinsym/expr.hpp"

namespace twinsym {

std::uint64_t read_le(const std::map<std::uint32_t, std::uint8_t>& memory, std::uint32_t addr,
                      std::uint32_t bytes) {
  std::uint64_t v = 0;
  for (std::uint32_t i = 0; i < bytes; ++i) {
    auto it = memory.find(addr + i);
    const std::uint64_t byte = it == memory.end() ? 0 : it->second;
    v |= byte << (8 * i);
  }
  return v;
}

ConcreteOutcome interpret(const Program& p, const ConcreteInput& input, std::uint32_t bound) {
  ConcreteOutcome out;
  std::vector<std::uint64_t> regs(p.registers.size(), 0);
  for (const auto& [name, value] : input.registers) {
    auto r = p.find_register(name);
    if (!r) throw Error("interpret: input names unknown register '" + name + "'");
    regs[*r] = value & width_mask(p.registers[*r].width);
  }
  std::map<std::uint32_t, std::uint8_t>& mem = out.final_memory;
  mem = input.memory;
  std::vector<std::uint32_t> visits(p.instructions.size(), 0);

  auto finish = [&](Status s) {
    out.status = s;
    for (std::size_t i = 0; i < regs.size(); ++i) out.final_registers[p.registers[i].name] = regs[i];
    return out;
  };

  std::uint32_t pc = 0;
  while (pc < p.instructions.size()) {
    if (++visits[pc] > bound) return finish(Status::LoopBoundExceeded);
    const Instruction& inst = p.instructions[pc];
    out.instr_trace.push_back(pc);
    const std::uint32_t dw = inst.dst < p.registers.size() ? p.registers[inst.dst].width : 0;
    const std::uint64_t dmask = width_mask(dw);
    auto src = [&](std::size_t i) -> std::uint64_t {
      const Operand& o = inst.srcs[i];
      if (o.is_imm) return static_cast<std::uint64_t>(o.imm) & dmask;
      return regs[o.reg];
    };
    auto src_as = [&](std::size_t i, std::uint32_t width) -> std::uint64_t {
      const Operand& o = inst.srcs[i];
      if (o.is_imm) return static_cast<std::uint64_t>(o.imm) & width_mask(width);
      return regs[o.reg];
    };
    auto address = [&]() -> std::uint64_t {
      std::uint64_t base = inst.base ? regs[*inst.base] : 0;
      return (base + static_cast<std::uint64_t>(inst.offset)) & 0xFFFFFFFFu;
    };
    std::uint32_t next = pc + 1;
    switch (inst.op) {
      case Opcode::Const:
        regs[inst.dst] = static_cast<std::uint64_t>(inst.imm) & dmask;
        break;
      case Opcode::Add:
      case Opcode::Sub:
      case Opcode::Mul: {
        const std::uint64_t a = src(0);
        const std::uint64_t b = src(1);
        // Operands are at most 32 bits wide, so the exact result fits.
        const std::uint64_t exact = inst.op == Opcode::Add ? a + b
                                    : inst.op == Opcode::Sub ? a - b
                                                             : a * b;
        const bool overflow = inst.op == Opcode::Sub ? a < b : exact > dmask;
        if (overflow && p.mode == OverflowMode::Trap) return finish(Status::TrapOverflow);
        regs[inst.dst] = exact & dmask;
        break;
      }
      case Opcode::UDiv:
      case Opcode::URem: {
        const std::uint64_t b = src(1);
        if (b == 0) return finish(Status::DivByZero);
        regs[inst.dst] = inst.op == Opcode::UDiv ? src(0) / b : src(0) % b;
        break;
      }
      case Opcode::And:
        regs[inst.dst] = src(0) & src(1);
        break;
      case Opcode::Or:
        regs[inst.dst] = src(0) | src(1);
        break;
      case Opcode::Xor:
        regs[inst.dst] = src(0) ^ src(1);
        break;
      case Opcode::Not:
        regs[inst.dst] = ~src(0) & dmask;
        break;
      case Opcode::Shl:
      case Opcode::LShr:
      case Opcode::AShr: {
        const std::uint64_t a = src(0);
        const std::uint64_t s = src(1);
        const bool neg = dw > 0 && ((a >> (dw - 1)) & 1);
        std::uint64_t r = 0;
        if (inst.op == Opcode::Shl) {
          r = s >= dw ? 0 : (a << s) & dmask;
        } else if (inst.op == Opcode::LShr) {
          r = s >= dw ? 0 : a >> s;
        } else if (s >= dw) {
          r = neg ? dmask : 0;
        } else {
          r = a >> s;
          if (neg && s > 0) r |= dmask & ~(dmask >> s);
        }
        regs[inst.dst] = r;
        break;
      }
      case Opcode::CmpEq:
      case Opcode::CmpUlt:
      case Opcode::CmpSlt: {
        const std::uint32_t aw = p.registers[inst.srcs[0].reg].width;
        const std::uint64_t a = src_as(0, aw);
        const std::uint64_t b = src_as(1, aw);
        bool r = false;
        if (inst.op == Opcode::CmpEq) r = a == b;
        else if (inst.op == Opcode::CmpUlt) r = a < b;
        else r = to_signed(a, aw) < to_signed(b, aw);
        regs[inst.dst] = r ? 1 : 0;
        break;
      }
      case Opcode::Select:
        regs[inst.dst] = regs[inst.srcs[0].reg] != 0 ? src(1) : src(2);
        break;
      case Opcode::Br:
        next = regs[inst.srcs[0].reg] != 0 ? inst.targets[0] : inst.targets[1];
        break;
      case Opcode::Jmp:
        next = inst.targets[0];
        break;
      case Opcode::Load: {
        const std::uint64_t addr = address();
        const std::uint32_t bytes = inst.mem_width / 8;
        if (addr + bytes > kAddressSpaceSize) return finish(Status::OutOfBoundsMem);
        regs[inst.dst] = read_le(mem, static_cast<std::uint32_t>(addr), bytes);
        break;
      }
      case Opcode::Store: {
        const std::uint64_t addr = address();
        const std::uint32_t bytes = inst.mem_width / 8;
        if (addr + bytes > kAddressSpaceSize) return finish(Status::OutOfBoundsMem);
        const std::uint64_t v = regs[inst.srcs[0].reg];
        for (std::uint32_t i = 0; i < bytes; ++i) {
          mem[static_cast<std::uint32_t>(addr) + i] = static_cast<std::uint8_t>(v >> (8 * i));
        }
        break;
      }
      case Opcode::Observe:
        out.io_events.push_back(regs[inst.srcs[0].reg]);
        break;
      case Opcode::Assume:
        if (regs[inst.srcs[0].reg] == 0) return finish(Status::AssumeViolated);
        break;
      case Opcode::Assert:
        if (regs[inst.srcs[0].reg] == 0) return finish(Status::AssertFailed);
        break;
      case Opcode::Halt:
        return finish(Status::Finished);
    }
    pc = next;
  }
  return finish(Status::Finished);
}

}  // namespace twinsym
