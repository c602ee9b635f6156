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


#include "twinsym/smtlib.hpp"

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

#include "twinsym/error.hpp"

namespace twinsym {

namespace {

std::string bv_const(std::uint32_t width, std::uint64_t value) {
  return "(_ bv" + std::to_string(value) + " " + std::to_string(width) + ")";
}

std::string sort_of(Expr e) { return "(_ BitVec " + std::to_string(e->width) + ")"; }

std::string ref(Expr e) {
  if (e->op == Op::Const) return bv_const(e->width, e->value);
  if (e->op == Op::Var) return "|" + e->name + "|";
  return "e" + std::to_string(e->id);
}

std::string bit(const std::string& pred) { return "(ite " + pred + " #b1 #b0)"; }

std::string term(Expr e) {
  auto a = [&](std::size_t i) { return ref(e->arg(i)); };
  switch (e->op) {
    case Op::Add: return "(bvadd " + a(0) + " " + a(1) + ")";
    case Op::Sub: return "(bvsub " + a(0) + " " + a(1) + ")";
    case Op::Mul: return "(bvmul " + a(0) + " " + a(1) + ")";
    case Op::UDiv: return "(bvudiv " + a(0) + " " + a(1) + ")";
    case Op::URem: return "(bvurem " + a(0) + " " + a(1) + ")";
    case Op::And: return "(bvand " + a(0) + " " + a(1) + ")";
    case Op::Or: return "(bvor " + a(0) + " " + a(1) + ")";
    case Op::Xor: return "(bvxor " + a(0) + " " + a(1) + ")";
    case Op::Not: return "(bvnot " + a(0) + ")";
    case Op::Shl: return "(bvshl " + a(0) + " " + a(1) + ")";
    case Op::LShr: return "(bvlshr " + a(0) + " " + a(1) + ")";
    case Op::AShr: return "(bvashr " + a(0) + " " + a(1) + ")";
    case Op::Eq: return bit("(= " + a(0) + " " + a(1) + ")");
    case Op::Ult: return bit("(bvult " + a(0) + " " + a(1) + ")");
    case Op::Slt: return bit("(bvslt " + a(0) + " " + a(1) + ")");
    case Op::Ite: return "(ite (= " + a(0) + " #b1) " + a(1) + " " + a(2) + ")";
    case Op::ZExt:
      return "((_ zero_extend " + std::to_string(e->width - e->arg(0)->width) + ") " + a(0) + ")";
    case Op::SExt:
      return "((_ sign_extend " + std::to_string(e->width - e->arg(0)->width) + ") " + a(0) + ")";
    case Op::Extract:
      return "((_ extract " + std::to_string(e->hi) + " " + std::to_string(e->lo) + ") " + a(0) + ")";
    case Op::Concat: return "(concat " + a(0) + " " + a(1) + ")";
    case Op::Const:
    case Op::Var:
      break;
  }
  return ref(e);
}

// Minimal s-expression reader for solver output.
struct SExpr {
  std::string atom;
  std::vector<SExpr> list;
  bool is_list = false;
};

std::vector<SExpr> read_sexprs(const std::string& text) {
  std::vector<SExpr> out;
  std::vector<SExpr> stack;
  std::size_t i = 0;
  auto push = [&](SExpr s) {
    if (stack.empty()) out.push_back(std::move(s));
    else stack.back().list.push_back(std::move(s));
  };
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '(') {
      SExpr s;
      s.is_list = true;
      stack.push_back(std::move(s));
      ++i;
    } else if (c == ')') {
      if (stack.empty()) throw Error("solver output: unbalanced ')'");
      SExpr s = std::move(stack.back());
      stack.pop_back();
      push(std::move(s));
      ++i;
    } else if (c == '"') {
      std::size_t j = text.find('"', i + 1);
      if (j == std::string::npos) j = text.size() - 1;
      push(SExpr{text.substr(i, j - i + 1), {}, false});
      i = j + 1;
    } else if (c == '|') {
      std::size_t j = text.find('|', i + 1);
      if (j == std::string::npos) throw Error("solver output: unterminated '|'");
      push(SExpr{text.substr(i + 1, j - i - 1), {}, false});
      i = j + 1;
    } else {
      std::size_t j = i;
      while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j])) && text[j] != '(' &&
             text[j] != ')') {
        ++j;
      }
      push(SExpr{text.substr(i, j - i), {}, false});
      i = j;
    }
  }
  if (!stack.empty()) throw Error("solver output: unbalanced '('");
  return out;
}

std::uint64_t bv_value(const SExpr& v) {
  if (!v.is_list) {
    if (v.atom.rfind("#x", 0) == 0) return std::stoull(v.atom.substr(2), nullptr, 16);
    if (v.atom.rfind("#b", 0) == 0) return std::stoull(v.atom.substr(2), nullptr, 2);
  } else if (v.list.size() == 3 && v.list[0].atom == "_" && v.list[1].atom.rfind("bv", 0) == 0) {
    return std::stoull(v.list[1].atom.substr(2));
  }
  throw Error("solver output: unreadable bitvector value");
}

// Only declared variables are read; solvers also echo the helper definitions.
void collect_defines(const SExpr& s, const std::set<VarDecl>& vars, Assignment& model) {
  if (!s.is_list) return;
  if (s.list.size() == 5 && s.list[0].atom == "define-fun") {
    const std::string& name = s.list[1].atom;
    for (const auto& [var, width] : vars) {
      if (var == name) model[name] = bv_value(s.list[4]) & width_mask(width);
    }
    return;
  }
  for (const SExpr& c : s.list) collect_defines(c, vars, model);
}

bool is_error(const SExpr& s) { return s.is_list && !s.list.empty() && s.list[0].atom == "error"; }

std::string run_process(const std::string& command, const std::string& input) {
  std::string path = (std::filesystem::temp_directory_path() / "twinsym-XXXXXX").string();
  const int fd = mkstemp(path.data());
  if (fd < 0) throw Error("cannot create a temporary file for the solver script");
  {
    const char* p = input.data();
    std::size_t left = input.size();
    while (left > 0) {
      const ssize_t n = ::write(fd, p, left);
      if (n <= 0) {
        ::close(fd);
        std::filesystem::remove(path);
        throw Error("cannot write the solver script");
      }
      p += n;
      left -= static_cast<std::size_t>(n);
    }
    ::close(fd);
  }
  const std::string cmd = command + " < '" + path + "' 2>&1";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) {
    std::filesystem::remove(path);
    throw Error("cannot start solver '" + command + "'");
  }
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  ::pclose(pipe);
  std::filesystem::remove(path);
  return out;
}

}  // namespace

std::string smtlib_script(const std::vector<Expr>& clauses, bool want_model, bool want_core,
                          std::uint64_t timeout_ms) {
  std::ostringstream os;
  if (want_model) os << "(set-option :produce-models true)\n";
  if (want_core) os << "(set-option :produce-unsat-cores true)\n";
  if (timeout_ms) os << "(set-option :timeout " << timeout_ms << ")\n";
  os << "(set-logic QF_BV)\n";
  for (const auto& [name, width] : free_vars(clauses)) {
    os << "(declare-fun |" << name << "| () (_ BitVec " << width << "))\n";
  }
  std::unordered_set<ExprId> done;
  std::function<void(Expr)> define = [&](Expr e) {
    if (e->op == Op::Const || e->op == Op::Var || !done.insert(e->id).second) return;
    for (Expr a : e->operands()) define(a);
    os << "(define-fun e" << e->id << " () " << sort_of(e) << " " << term(e) << ")\n";
  };
  for (Expr c : clauses) define(c);
  for (std::size_t i = 0; i < clauses.size(); ++i) {
    os << "(assert (! (= " << ref(clauses[i]) << " #b1) :named c" << i << "))\n";
  }
  os << "(check-sat)\n";
  if (want_model) os << "(get-model)\n";
  if (want_core) os << "(get-unsat-core)\n";
  os << "(exit)\n";
  return os.str();
}

SolveResult SmtLibSolver::run(const std::vector<Expr>& clauses, bool want_model,
                              bool want_core) const {
  const std::string out = run_process(
      command_, smtlib_script(clauses, want_model, want_core,
                              static_cast<std::uint64_t>(options_.max_time.count())));
  std::vector<SExpr> parts;
  try {
    parts = read_sexprs(out);
  } catch (const std::exception&) {
    return SolveResult{};
  }
  // Skip chatter before the verdict, such as warnings.
  std::size_t i = 0;
  while (i < parts.size() && (parts[i].is_list || (parts[i].atom != "sat" && parts[i].atom != "unsat" &&
                                                   parts[i].atom != "unknown"))) {
    ++i;
  }
  SolveResult r;
  if (i == parts.size() || parts[i].atom == "unknown") return r;
  if (parts[i].atom == "sat") {
    r.kind = SolveResult::Kind::Sat;
    const auto vars = free_vars(clauses);
    try {
      for (std::size_t j = i + 1; j < parts.size(); ++j) {
        if (!is_error(parts[j])) collect_defines(parts[j], vars, r.model);
      }
    } catch (const std::exception&) {
      return SolveResult{};
    }
    for (const auto& [name, w] : vars) r.model.emplace(name, 0);
    return r;
  }
  r.kind = SolveResult::Kind::Unsat;
  r.core = clauses;
  if (!want_core) return r;
  for (std::size_t j = i + 1; j < parts.size(); ++j) {
    if (!parts[j].is_list || is_error(parts[j])) continue;
    std::vector<Expr> core;
    for (const SExpr& name : parts[j].list) {
      if (name.is_list || name.atom.size() < 2 || name.atom[0] != 'c') continue;
      const std::size_t idx = std::stoul(name.atom.substr(1));
      if (idx < clauses.size()) core.push_back(clauses[idx]);
    }
    r.core = std::move(core);
    break;
  }
  return r;
}

SolveResult SmtLibSolver::is_sat(const ClauseSet& clauses, bool want_core) const {
  std::vector<Expr> active;
  for (Expr c : clauses) {
    if (c->is_const(1)) continue;
    if (c->is_const(0)) return SolveResult{SolveResult::Kind::Unsat, {}, {c}};
    active.push_back(c);
  }
  if (active.empty()) return SolveResult{SolveResult::Kind::Sat, {}, {}};
  SolveResult r = run(active, true, want_core);
  if (!r.unsat() || !want_core || !options_.minimize_cores) return r;
  std::vector<Expr> core = r.core;
  for (std::size_t i = 0; i < core.size();) {
    std::vector<Expr> without = core;
    without.erase(without.begin() + static_cast<std::ptrdiff_t>(i));
    SolveResult t = run(without, false, false);
    if (t.unsat()) core = std::move(without);
    else ++i;
  }
  std::sort(core.begin(), core.end(), [](Expr a, Expr b) { return a->id < b->id; });
  r.core = std::move(core);
  return r;
}

bool solver_command_available(const std::string& command) {
  std::istringstream in(command);
  std::string exe;
  in >> exe;
  if (exe.empty()) return false;
  if (exe.find('/') != std::string::npos) return ::access(exe.c_str(), X_OK) == 0;
  const char* path = std::getenv("PATH");
  if (!path) return false;
  std::istringstream dirs(path);
  std::string dir;
  while (std::getline(dirs, dir, ':')) {
    if (!dir.empty() && ::access((dir + "/" + exe).c_str(), X_OK) == 0) return true;
  }
  return false;
}

std::unique_ptr<Solver> make_solver(const SolverConfig& config, std::uint64_t seed) {
  SolverOptions options;
  options.minimize_cores = config.core_minimize;
  options.max_conflicts = config.max_conflicts;
  options.max_time = std::chrono::milliseconds(config.timeout_ms);
  options.seed = seed;
  if (config.kind == "external") {
    if (!solver_command_available(config.command)) {
      throw ValidationError("external solver command '" + config.command + "' is not available");
    }
    return std::make_unique<SmtLibSolver>(config.command, options);
  }
  return make_embedded_solver(options);
}

}  // namespace twinsym
