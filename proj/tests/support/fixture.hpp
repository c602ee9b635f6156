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


// Shared setup for tests that need live trees: the harness, both programs,
// the pool and the trees stay alive together.

#ifndef TWINSYM_TESTS_SUPPORT_FIXTURE_HPP_
#define TWINSYM_TESTS_SUPPORT_FIXTURE_HPP_

#include <array>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>

#include "twinsym/analysis.hpp"
#include "twinsym/compare.hpp"
#include "twinsym/executor.hpp"
#include "twinsym/harness.hpp"
#include "twinsym/ir.hpp"
#include "twinsym/session.hpp"
#include "twinsym/smtlib.hpp"

namespace twinsym::testing {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string corpus_path(const std::string& name) {
  return std::string(TWINSYM_CORPUS_DIR) + "/" + name;
}

struct LiveAnalysis {
  ExprPool pool;
  Harness h;
  std::array<Program, 2> programs;
  std::unique_ptr<Solver> solver;
  std::array<ExecTree, 2> trees;

  LiveAnalysis(Harness harness, const std::string& left, const std::string& right)
      : h(std::move(harness)), programs{parse_program(left), parse_program(right)} {
    validate_harness(h, programs[0], programs[1]);
    solver = make_solver(h.solver);
    for (Side side : {Side::Left, Side::Right}) {
      Executor ex(pool, *solver, programs[index(side)], h, side);
      ex.run_all();
      trees[index(side)] = ex.take_tree();
    }
  }

  static std::unique_ptr<LiveAnalysis> corpus(const std::string& harness_name) {
    Harness h = load_harness(corpus_path(harness_name));
    const std::string l = read_file(h.program_path(Side::Left));
    const std::string r = read_file(h.program_path(Side::Right));
    return std::make_unique<LiveAnalysis>(std::move(h), l, r);
  }

  TreePair pair() { return TreePair{&pool, &trees[0], &trees[1], &programs[0], &programs[1]}; }

  CompatMatrix pair_all(bool cache_on, unsigned workers = 1) {
    CoreCache cache(cache_on);
    Comparer c(pair(), *solver, h, cache);
    return c.pair_all(workers);
  }
};

/// Sessions of the bundled corpus, computed once per test binary.
inline const SessionDoc& corpus_session(const std::string& harness_name) {
  static std::map<std::string, SessionDoc> cache;
  auto it = cache.find(harness_name);
  if (it == cache.end()) {
    it = cache.emplace(harness_name, run_analysis_file(corpus_path(harness_name))).first;
  }
  return it->second;
}

inline const char* const kCorpusHarnesses[] = {"halt_vs_halt.json", "sort_equal.json", "sort_bug.json",
                                               "watch.json", "watch_bounded.json"};

}  // namespace twinsym::testing

#endif  // TWINSYM_TESTS_SUPPORT_FIXTURE_HPP_
