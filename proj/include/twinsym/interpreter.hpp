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

// Concrete reference interpreter for the IR.

#ifndef TWINSYM_INTERPRETER_HPP_
#define TWINSYM_INTERPRETER_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "twinsym/ir.hpp"

namespace twinsym {

/// Initial machine contents. Bytes and registers not listed start at zero.
struct ConcreteInput {
  std::map<std::uint32_t, std::uint8_t> memory;
  std::map<std::string, std::uint64_t> registers;
  bool operator==(const ConcreteInput&) const = default;
};

struct ConcreteOutcome {
  Status status = Status::Finished;
  /// Every byte that was initialized or written, keyed by address.
  std::map<std::uint32_t, std::uint8_t> final_memory;
  std::map<std::string, std::uint64_t> final_registers;
  std::vector<std::uint64_t> io_events;
  std::vector<std::uint32_t> instr_trace;

  bool operator==(const ConcreteOutcome&) const = default;
};

/// Runs `p` to termination. Any instruction visited more than `bound` times
/// ends the run with LoopBoundExceeded before it executes.
ConcreteOutcome interpret(const Program& p, const ConcreteInput& input,
                          std::uint32_t bound = kDefaultLoopBound);

/// Little-endian read of `bytes` bytes from a final memory map.
std::uint64_t read_le(const std::map<std::uint32_t, std::uint8_t>& memory, std::uint32_t addr,
                      std::uint32_t bytes);

}  // namespace twinsym

#endif  // TWINSYM_INTERPRETER_HPP_
