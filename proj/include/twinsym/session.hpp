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


// The session document: one self-contained JSON file holding both execution
// trees, the compatibility matrix, diffs, concretions and view data. The
// schema is documented in docs/session-schema.md.

#ifndef TWINSYM_SESSION_HPP_
#define TWINSYM_SESSION_HPP_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "twinsym/compare.hpp"
#include "twinsym/executor.hpp"
#include "twinsym/harness.hpp"
#include "twinsym/tree_view.hpp"

namespace twinsym {

inline constexpr int kSchemaVersion = 1;
inline constexpr std::string_view kEngineVersion = "twinsym 0.1.0";

struct ProgramSource {
  std::string name;
  std::string source;
  bool operator==(const ProgramSource&) const = default;
};

struct ViewSpec {
  int compress = 0;
  std::vector<PruneRelation> prune;
  std::array<CompressedTree, 2> compressed;
  std::optional<VisibleNodes> visible;  // present when prune is nonempty
  bool operator==(const ViewSpec&) const = default;
};

struct SessionDoc {
  int schema_version = kSchemaVersion;
  std::string engine_version{kEngineVersion};
  Harness harness;
  std::array<ProgramSource, 2> programs;
  std::array<ExecTree, 2> trees;
  std::map<ExprId, std::string> exprs;  // canonical text of every referenced id
  CompatMatrix matrix;
  std::size_t cores_cached = 0;
  std::vector<PairRecord> pairs;  // one per compatible pair, sorted
  std::array<HighlightMap, 2> highlights;
  ViewSpec view;
  std::array<ExecStats, 2> exec_stats;

  const PairRecord* find_pair(LeafPair p) const;
  /// Pairs with a difference among the harness diff targets.
  std::vector<LeafPair> differing_pairs() const;
  bool has_unknowns() const;
  bool operator==(const SessionDoc&) const = default;
};

/// Overall verdict of one pair as recorded in the document.
Verdict pair_verdict(const PairRecord& p, const DiffTargets& wanted);

/// Adds the canonical text of every id the document references.
void collect_exprs(SessionDoc& doc, const ExprPool& pool);

/// Throws SessionError naming the first dangling reference.
void check_consistency(const SessionDoc& doc);

/// Deterministic serialization; checks consistency first.
std::string export_session(const SessionDoc& doc);
/// Throws SessionError on malformed input or an unsupported schema version.
SessionDoc import_session(std::string_view text);
SessionDoc load_session(const std::string& path);

/// FNV-1a of the serialized document, used to tie approvals to a session.
std::uint64_t session_hash(std::string_view serialized);
std::string hash_hex(std::uint64_t h);

/// Approved differing pairs. On disk: a `# session <hash>` header line, then
/// one `leftLeafId,rightLeafId` line per pair; other `#` lines are comments.
struct AcceptFile {
  std::string session_hash;
  std::set<LeafPair> pairs;
  bool operator==(const AcceptFile&) const = default;
};

AcceptFile parse_accept_file(std::string_view text);
std::string write_accept_file(const AcceptFile& f);

}  // namespace twinsym

#endif  // TWINSYM_SESSION_HPP_
