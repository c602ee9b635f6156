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


// Text output derived from a session document: the review report and
// concrete test vectors, with a replay check for the latter. The vector
// format is documented in docs/test-vectors.md.

#ifndef TWINSYM_REPORT_HPP_
#define TWINSYM_REPORT_HPP_

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "twinsym/interpreter.hpp"
#include "twinsym/session.hpp"

namespace twinsym {

/// Human-readable report with deterministic ordering.
std::string render_report(const SessionDoc& doc);

struct TestVector {
  std::size_t index = 0;
  LeafPair pair;
  std::string source;  // diff target the concretion came from, or "pair"
  Assignment inputs;
  std::array<ConcreteInput, 2> setup;
  std::array<Status, 2> status{};
  /// Per target: expected value on each side.
  std::map<std::string, std::array<std::uint64_t, 2>> expected;
  bool operator==(const TestVector&) const = default;
};

/// One vector per concretion, pairs in order, duplicates within a pair
/// dropped.
std::vector<TestVector> test_vectors(const SessionDoc& doc);

/// Header lines followed by one line per vector.
std::string write_test_vectors(const SessionDoc& doc, const std::vector<TestVector>& vectors);
/// Throws ParseError naming the offending line.
std::vector<TestVector> parse_test_vectors(std::string_view text);

struct ReplayResult {
  bool ok = true;
  std::vector<std::string> mismatches;
};

/// Runs both programs embedded in `doc` on the vector's setup and compares
/// status and target values with the expectations.
ReplayResult replay(const SessionDoc& doc, const TestVector& v);

}  // namespace twinsym

#endif  // TWINSYM_REPORT_HPP_
