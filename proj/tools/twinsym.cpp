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


// twinsym: comparative symbolic execution of two programs.
//
//   twinsym run HARNESS [-o DIR] [flags]   analyze, write DIR/session.json
//   twinsym report SESSION                 text report
//   twinsym testgen SESSION [-o FILE]      concrete test vectors
//   twinsym replay SESSION VECTORS         re-run vectors concretely
//   twinsym export SESSION [-o DIR]        copy the session for the viewer
//   twinsym accept SESSION [-o FILE]       accept-file for differing pairs
//
// Exit codes: 0 equal, 1 differences, 2 usage or validation error,
// 3 undecided results.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "twinsym/analysis.hpp"
#include "twinsym/error.hpp"
#include "twinsym/report.hpp"
#include "twinsym/session.hpp"

namespace fs = std::filesystem;
using namespace twinsym;

namespace {

constexpr int kUsage = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text) || !out.flush()) throw Error("cannot write '" + path.string() + "'");
}

std::set<LeafPair> parse_pair_list(const std::vector<std::string>& items) {
  std::string text = "# session x\n";
  for (const std::string& i : items) text += i + "\n";
  return parse_accept_file(text).pairs;
}

struct RunArgs {
  std::string harness;
  std::string out_dir = "twinsym-out";
  std::string accept_file;
  bool no_core_cache = false;
  std::string core_minimize;
  std::vector<std::string> prune;
  std::string refinement = "differing";
  std::optional<std::uint32_t> loop_bound;
  std::optional<std::uint32_t> concretions;
  std::optional<std::string> solver;
  AnalysisOptions options;
};

int cmd_run(RunArgs& a) {
  AnalysisOptions& o = a.options;
  o.core_cache = !a.no_core_cache;
  if (!a.core_minimize.empty()) o.core_minimize = a.core_minimize == "on";
  o.loop_bound = a.loop_bound;
  o.concretions = a.concretions;
  o.solver = a.solver;
  o.refinement_all = a.refinement == "all";
  for (const std::string& r : a.prune) o.prune.push_back(PruneRelation::parse(r));
  std::optional<AcceptFile> accepted;
  if (!a.accept_file.empty()) accepted = parse_accept_file(read_file(a.accept_file));

  const SessionDoc doc = run_analysis_file(a.harness, o);
  const fs::path out = fs::path(a.out_dir) / "session.json";
  write_file(out, export_session(doc));
  std::cout << "session: " << out.string() << "\n";
  std::cout << "leaves: " << doc.trees[0].leaves().size() << " left, " << doc.trees[1].leaves().size()
            << " right; compatible pairs: " << doc.matrix.pairs.size()
            << "; differing pairs: " << doc.differing_pairs().size() << "\n";

  std::set<LeafPair> approved;
  if (accepted) {
    const std::string key = analysis_key(doc);
    if (accepted->session_hash != key) {
      std::cerr << "twinsym: accept file was written for analysis " << accepted->session_hash
                << ", this analysis is " << key << "\n";
      return kUsage;
    }
    const std::vector<LeafPair> differing = doc.differing_pairs();
    for (const LeafPair& p : accepted->pairs) {
      if (std::find(differing.begin(), differing.end(), p) == differing.end()) {
        std::cerr << "twinsym: accepted pair " << p.first << "," << p.second
                  << " is not a differing pair; ignored\n";
      }
    }
    approved = accepted->pairs;
  }
  const int code = exit_code(doc, approved);
  if (code == 3) std::cerr << "twinsym: undecided results present (resource limits)\n";
  return code;
}

int cmd_report(const std::string& session) {
  std::cout << render_report(load_session(session));
  return 0;
}

int cmd_testgen(const std::string& session, const std::string& out) {
  const SessionDoc doc = load_session(session);
  const std::vector<TestVector> vectors = test_vectors(doc);
  if (vectors.empty()) {
    std::cerr << "twinsym: session has no concretions to turn into test vectors\n";
    return kUsage;
  }
  const std::string text = write_test_vectors(doc, vectors);
  if (out.empty()) {
    std::cout << text;
  } else {
    write_file(out, text);
    std::cout << vectors.size() << " vectors: " << out << "\n";
  }
  return 0;
}

int cmd_replay(const std::string& session, const std::string& vectors_path) {
  const SessionDoc doc = load_session(session);
  int code = 0;
  for (const TestVector& v : parse_test_vectors(read_file(vectors_path))) {
    const ReplayResult r = replay(doc, v);
    std::cout << "vector " << v.index << ": " << (r.ok ? "ok" : "MISMATCH") << "\n";
    for (const std::string& m : r.mismatches) std::cout << "  " << m << "\n";
    if (!r.ok) code = 1;
  }
  return code;
}

int cmd_export(const std::string& session, const std::string& out_dir) {
  const SessionDoc doc = load_session(session);
  const fs::path out = fs::path(out_dir) / "session.json";
  write_file(out, export_session(doc));
  std::cout << out.string() << "\n";
  return 0;
}

int cmd_accept(const std::string& session, const std::string& out,
               const std::vector<std::string>& pairs) {
  const SessionDoc doc = load_session(session);
  AcceptFile f;
  f.session_hash = analysis_key(doc);
  const std::vector<LeafPair> differing = doc.differing_pairs();
  if (pairs.empty()) {
    f.pairs.insert(differing.begin(), differing.end());
  } else {
    for (const LeafPair& p : parse_pair_list(pairs)) {
      if (std::find(differing.begin(), differing.end(), p) == differing.end()) {
        throw ValidationError("pair " + std::to_string(p.first) + "," + std::to_string(p.second) +
                              " is not a differing pair");
      }
      f.pairs.insert(p);
    }
  }
  const std::string text = write_accept_file(f);
  if (out.empty()) std::cout << text;
  else write_file(out, text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"twinsym: comparative symbolic execution"};
  app.require_subcommand(1);

  RunArgs run;
  CLI::App* run_cmd = app.add_subcommand("run", "Analyze the program pair a harness describes");
  run_cmd->add_option("harness", run.harness, "Harness file")->required()->check(CLI::ExistingFile);
  run_cmd->add_option("-o,--out", run.out_dir, "Output directory for session.json");
  run_cmd->add_flag("--no-core-cache", run.no_core_cache, "Disable unsat-core memoization");
  run_cmd->add_option("--core-minimize", run.core_minimize, "Minimize unsat cores")
      ->check(CLI::IsMember({"on", "off"}));
  run_cmd->add_option("--compress", run.options.compress, "Compression level stored in the view")
      ->check(CLI::Range(0, 2));
  run_cmd->add_option("--prune", run.prune, "Prune relations, e.g. AnyDiff or MemoryDiffers(array)")
      ->delimiter(';');
  run_cmd->add_option("--solver", run.solver, "Solver backend")->check(CLI::IsMember({"embedded", "external"}));
  run_cmd->add_option("--loop-bound", run.loop_bound, "Visits allowed per instruction")
      ->check(CLI::PositiveNumber);
  run_cmd->add_option("--concretions", run.concretions, "Concrete inputs per difference");
  run_cmd->add_option("--seed", run.options.seed, "Seed for model search tie-breaking");
  run_cmd->add_option("--workers", run.options.workers, "Threads for leaf pairing")->check(CLI::PositiveNumber);
  run_cmd->add_option("--refinement", run.refinement, "Pairs that get a refinement verdict")
      ->check(CLI::IsMember({"differing", "all"}));
  run_cmd->add_option("--accept-file", run.accept_file, "Approved differing pairs");

  std::string session;
  std::string out;
  CLI::App* report_cmd = app.add_subcommand("report", "Print the text report of a session");
  report_cmd->add_option("session", session, "Session file")->required();

  CLI::App* testgen_cmd = app.add_subcommand("testgen", "Write concrete test vectors");
  testgen_cmd->add_option("session", session, "Session file")->required();
  testgen_cmd->add_option("-o,--out", out, "Output file (default: standard output)");

  std::string vectors;
  CLI::App* replay_cmd = app.add_subcommand("replay", "Replay test vectors on both programs");
  replay_cmd->add_option("session", session, "Session file")->required();
  replay_cmd->add_option("vectors", vectors, "Test vector file")->required();

  std::string export_dir = "twinsym-ui";
  CLI::App* export_cmd = app.add_subcommand("export", "Copy a session to the viewer bundle directory");
  export_cmd->add_option("session", session, "Session file")->required();
  export_cmd->add_option("-o,--out", export_dir, "Bundle directory");

  std::vector<std::string> pairs;
  CLI::App* accept_cmd = app.add_subcommand("accept", "Write an accept file");
  accept_cmd->add_option("session", session, "Session file")->required();
  accept_cmd->add_option("-o,--out", out, "Output file (default: standard output)");
  accept_cmd->add_option("--pair", pairs, "Pair to accept as left,right (default: every differing pair)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*run_cmd) return cmd_run(run);
    if (*report_cmd) return cmd_report(session);
    if (*testgen_cmd) return cmd_testgen(session, out);
    if (*replay_cmd) return cmd_replay(session, vectors);
    if (*export_cmd) return cmd_export(session, export_dir);
    if (*accept_cmd) return cmd_accept(session, out, pairs);
  } catch (const std::exception& e) {
    std::cerr << "twinsym: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
