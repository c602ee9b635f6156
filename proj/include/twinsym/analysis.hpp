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


// End-to-end analysis: harness and programs in, session document out.

#ifndef TWINSYM_ANALYSIS_HPP_
#define TWINSYM_ANALYSIS_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "twinsym/harness.hpp"
#include "twinsym/session.hpp"
#include "twinsym/tree_view.hpp"

namespace twinsym {

/// Command-line level settings. Set overrides replace harness values.
struct AnalysisOptions {
  bool core_cache = true;
  unsigned workers = 1;
  /// Refinement for every compatible pair rather than differing ones only.
  bool refinement_all = false;
  std::optional<std::uint32_t> loop_bound;
  std::optional<std::uint32_t> concretions;
  std::optional<bool> core_minimize;
  std::optional<std::string> solver;  // embedded | external
  std::uint64_t seed = 0;
  int compress = 0;
  std::vector<PruneRelation> prune;
};

/// Applies the overrides in `o` to `h`. Throws ValidationError on values out
/// of range.
void apply_overrides(Harness& h, const AnalysisOptions& o);

/// Runs both programs symbolically, pairs the leaves and diffs every
/// compatible pair. Programs are given as source text.
SessionDoc run_analysis(Harness h, const std::array<ProgramSource, 2>& programs,
                        const AnalysisOptions& options = {});

/// Loads the harness and the programs it names, relative to its directory.
SessionDoc run_analysis_file(const std::string& harness_path, const AnalysisOptions& options = {});

/// Identifies the analysis an accept file was written for: a hash of the
/// engine version, the harness without its solver settings and both program
/// sources. View and solver flags leave it unchanged.
std::string analysis_key(const SessionDoc& doc);

/// 3 when Unknowns are present, else 1 when some differing pair is not in
/// `accepted`, else 0.
int exit_code(const SessionDoc& doc, const std::set<LeafPair>& accepted = {});

}  // namespace twinsym

#endif  // TWINSYM_ANALYSIS_HPP_
