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


#include "twinsym/analysis.hpp"

#include <algorithm>
#include <fstream>
#include <memory>
#include <sstream>

#include "json.hpp"

#include "twinsym/compare.hpp"
#include "twinsym/error.hpp"
#include "twinsym/executor.hpp"
#include "twinsym/ir.hpp"
#include "twinsym/smtlib.hpp"

namespace twinsym {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

void apply_overrides(Harness& h, const AnalysisOptions& o) {
  if (o.loop_bound) {
    if (*o.loop_bound == 0) throw ValidationError("loop bound must be positive");
    h.loop_bound = *o.loop_bound;
  }
  if (o.concretions) h.concretions = *o.concretions;
  if (o.core_minimize) h.solver.core_minimize = *o.core_minimize;
  if (o.solver) {
    if (*o.solver != "embedded" && *o.solver != "external") {
      throw ValidationError("solver must be 'embedded' or 'external'");
    }
    h.solver.kind = *o.solver;
  }
  if (o.compress < 0 || o.compress > 2) throw ValidationError("compression level must be 0, 1 or 2");
  if (o.workers == 0) throw ValidationError("workers must be positive");
  for (const PruneRelation& r : o.prune) {
    if (r.kind == PruneRelation::Kind::MemoryDiffers &&
        std::find(h.diff.annotations.begin(), h.diff.annotations.end(), r.annotation) ==
            h.diff.annotations.end()) {
      throw ValidationError("prune relation names '" + r.annotation + "', which is not a diff target");
    }
  }
}

SessionDoc run_analysis(Harness h, const std::array<ProgramSource, 2>& programs,
                        const AnalysisOptions& options) {
  apply_overrides(h, options);
  const std::array<Program, 2> parsed = {parse_program(programs[0].source),
                                         parse_program(programs[1].source)};
  validate_harness(h, parsed[0], parsed[1]);

  ExprPool pool;
  std::unique_ptr<Solver> solver = make_solver(h.solver, options.seed);

  SessionDoc doc;
  doc.programs = programs;
  for (Side side : {Side::Left, Side::Right}) {
    Executor ex(pool, *solver, parsed[index(side)], h, side);
    ex.run_all();
    doc.exec_stats[index(side)] = ex.stats();
    doc.trees[index(side)] = ex.take_tree();
  }

  TreePair trees{&pool, &doc.trees[0], &doc.trees[1], &parsed[0], &parsed[1]};
  CoreCache cache(options.core_cache);
  Comparer comparer(trees, *solver, h, cache);
  doc.matrix = comparer.pair_all(options.workers);
  doc.cores_cached = cache.size();

  for (const LeafPair& p : doc.matrix.pairs) {
    PairRecord rec{p, diff_pair(trees, *solver, h, p), std::nullopt};
    if (options.refinement_all || rec.diff.differs(h.diff)) {
      rec.refinement = refinement(trees, *solver, p);
    }
    doc.pairs.push_back(std::move(rec));
  }

  for (Side side : {Side::Left, Side::Right}) {
    doc.highlights[index(side)] = highlight(doc.trees[index(side)]);
    doc.view.compressed[index(side)] = compress(doc.trees[index(side)], options.compress);
  }
  doc.view.compress = options.compress;
  doc.view.prune = options.prune;
  if (!options.prune.empty()) {
    doc.view.visible = prune(doc.trees[0], doc.trees[1], doc.matrix, doc.pairs, options.prune);
  }

  h.base_dir.clear();
  doc.harness = std::move(h);
  collect_exprs(doc, pool);
  return doc;
}

SessionDoc run_analysis_file(const std::string& harness_path, const AnalysisOptions& options) {
  Harness h = load_harness(harness_path);
  std::array<ProgramSource, 2> programs;
  for (Side side : {Side::Left, Side::Right}) {
    const std::string path = h.program_path(side);
    programs[index(side)].source = read_file(path);
    const Program p = parse_program(programs[index(side)].source);
    programs[index(side)].name = p.name;
  }
  return run_analysis(std::move(h), programs, options);
}

std::string analysis_key(const SessionDoc& doc) {
  Harness h = doc.harness;
  h.base_dir.clear();
  nlohmann::json j = nlohmann::json::parse(harness_to_json(h));
  j.erase("solver");
  std::string text{kEngineVersion};
  text += '\n';
  text += j.dump();
  for (const ProgramSource& p : doc.programs) {
    text += '\n';
    text += p.source;
  }
  return hash_hex(session_hash(text));
}

int exit_code(const SessionDoc& doc, const std::set<LeafPair>& accepted) {
  if (doc.has_unknowns()) return 3;
  for (const LeafPair& p : doc.differing_pairs()) {
    if (!accepted.count(p)) return 1;
  }
  return 0;
}

}  // namespace twinsym
