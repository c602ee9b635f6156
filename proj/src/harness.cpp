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


#include "twinsym/harness.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "twinsym/error.hpp"

namespace twinsym {

using json = nlohmann::json;

std::string Annotation::display() const {
  std::string out;
  for (const NamePart& part : name) {
    if (!out.empty()) out += '.';
    if (const auto* s = std::get_if<std::string>(&part)) out += *s;
    else out += std::to_string(std::get<std::int64_t>(part));
  }
  return out;
}

std::string Harness::program_path(Side s) const {
  std::filesystem::path p(programs[index(s)]);
  if (p.is_absolute()) return p.string();
  return (std::filesystem::path(base_dir) / p).lexically_normal().string();
}

const Annotation* Harness::find_annotation(std::string_view display) const {
  for (const Annotation& a : annotations) {
    if (a.display() == display) return &a;
  }
  return nullptr;
}

std::optional<std::uint32_t> Harness::symbol_width(std::string_view name) const {
  for (const auto& [n, w] : symbols) {
    if (n == name) return w;
  }
  return std::nullopt;
}

namespace {

[[noreturn]] void fail(const std::string& msg) { throw ValidationError("harness: " + msg); }

std::uint32_t as_u32(const json& v, const std::string& what) {
  if (v.is_number_unsigned()) {
    if (v.get<std::uint64_t>() > UINT32_MAX) fail(what + " is out of range");
    return static_cast<std::uint32_t>(v.get<std::uint64_t>());
  }
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    try {
      std::size_t used = 0;
      const unsigned long long x = std::stoull(s, &used, 0);
      if (used == s.size() && x <= UINT32_MAX) return static_cast<std::uint32_t>(x);
    } catch (const std::exception&) {
    }
  }
  fail(what + " must be a non-negative integer");
}

const json& require(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(where + " lacks \"" + key + "\"");
  return *it;
}

Location parse_location(const json& v, const std::string& where, bool need_bytes) {
  if (!v.is_object()) fail(where + " must be an object");
  Location loc;
  if (v.contains("reg")) {
    if (!v["reg"].is_string()) fail(where + ".reg must be a string");
    loc.reg = v["reg"].get<std::string>();
    return loc;
  }
  loc.addr = as_u32(require(v, "addr", where), where + ".addr");
  if (v.contains("bytes")) loc.bytes = as_u32(v["bytes"], where + ".bytes");
  else if (need_bytes) fail(where + " lacks \"bytes\"");
  return loc;
}

json location_json(const Location& loc) {
  if (loc.reg) return json{{"reg", *loc.reg}};
  return json{{"addr", loc.addr}, {"bytes", loc.bytes}};
}

std::vector<std::string> string_list(const json& v, const std::string& where) {
  std::vector<std::string> out;
  if (!v.is_array()) fail(where + " must be a list of strings");
  for (const json& e : v) {
    if (!e.is_string()) fail(where + " must be a list of strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.'; }

// Recursive-descent compiler for the constraint language.
class ConstraintParser {
 public:
  ConstraintParser(ExprPool& pool, std::string_view text, const NameResolver& resolve)
      : pool_(pool), text_(text), resolve_(resolve) {}

  Expr run() {
    Term t = parse_or();
    skip_space();
    if (pos_ != text_.size()) error("unexpected '" + std::string(text_.substr(pos_, 1)) + "'");
    Expr e = materialize(t, 0);
    if (e->width != 1) error("constraint has width " + std::to_string(e->width) + ", not 1");
    return pool_.simplify(e);
  }

 private:
  // A literal stays unsized until it meets an operand of known width.
  struct Term {
    Expr e = nullptr;
    std::uint64_t literal = 0;
  };

  [[noreturn]] void error(const std::string& msg) {
    fail("constraint \"" + std::string(text_) + "\": " + msg);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(std::string_view tok) {
    skip_space();
    if (text_.substr(pos_, tok.size()) != tok) return false;
    pos_ += tok.size();
    return true;
  }

  Expr materialize(const Term& t, std::uint32_t width) {
    if (t.e) return t.e;
    if (width == 0) error("cannot infer the width of literal " + std::to_string(t.literal));
    if (width < 64 && t.literal > width_mask(width)) {
      error("literal " + std::to_string(t.literal) + " does not fit " + std::to_string(width) +
            " bits");
    }
    return pool_.constant(width, t.literal);
  }

  std::pair<Expr, Expr> unify(const Term& a, const Term& b, std::string_view op) {
    if (!a.e && !b.e) error("operator '" + std::string(op) + "' needs a sized operand");
    const std::uint32_t w = a.e ? a.e->width : b.e->width;
    Expr x = materialize(a, w);
    Expr y = materialize(b, w);
    if (x->width != y->width) {
      error("operator '" + std::string(op) + "' joins widths " + std::to_string(x->width) +
            " and " + std::to_string(y->width));
    }
    return {x, y};
  }

  Term parse_or() {
    Term t = parse_and();
    while (true) {
      skip_space();
      if (!accept("|")) return t;
      Term r = parse_and();
      auto [a, b] = unify(t, r, "|");
      t = {pool_.bv_or(a, b), 0};
    }
  }

  Term parse_and() {
    Term t = parse_cmp();
    while (accept("&")) {
      Term r = parse_cmp();
      auto [a, b] = unify(t, r, "&");
      t = {pool_.bv_and(a, b), 0};
    }
    return t;
  }

  Term parse_cmp() {
    Term t = parse_sum();
    static const char* kOps[] = {"<=", ">=", "<s", "==", "!=", "<", ">"};
    for (const char* op : kOps) {
      const std::size_t save = pos_;
      if (!accept(op)) continue;
      // `a <s b` is signed; `a <sec` compares against a name.
      if (std::string_view(op) == "<s" && pos_ < text_.size() && ident_char(text_[pos_])) {
        pos_ = save;
        continue;
      }
      Term r = parse_sum();
      auto [a, b] = unify(t, r, op);
      const std::string_view o(op);
      Expr e = nullptr;
      if (o == "<") e = pool_.ult(a, b);
      else if (o == "<s") e = pool_.slt(a, b);
      else if (o == "<=") e = pool_.bv_not(pool_.ult(b, a));
      else if (o == ">") e = pool_.ult(b, a);
      else if (o == ">=") e = pool_.bv_not(pool_.ult(a, b));
      else if (o == "==") e = pool_.eq(a, b);
      else e = pool_.ne(a, b);
      return {e, 0};
    }
    return t;
  }

  Term parse_sum() {
    Term t = parse_prod();
    while (true) {
      Op op;
      if (accept("+")) op = Op::Add;
      else if (accept("-")) op = Op::Sub;
      else return t;
      Term r = parse_prod();
      auto [a, b] = unify(t, r, op == Op::Add ? "+" : "-");
      t = {pool_.binary(op, a, b), 0};
    }
  }

  Term parse_prod() {
    Term t = parse_unary();
    while (accept("*")) {
      Term r = parse_unary();
      auto [a, b] = unify(t, r, "*");
      t = {pool_.mul(a, b), 0};
    }
    return t;
  }

  Term parse_unary() {
    if (accept("~")) {
      Term t = parse_unary();
      if (!t.e) error("'~' needs a sized operand");
      return {pool_.bv_not(t.e), 0};
    }
    return parse_atom();
  }

  Term parse_atom() {
    skip_space();
    if (accept("(")) {
      Term t = parse_or();
      if (!accept(")")) error("missing ')'");
      return t;
    }
    if (pos_ >= text_.size()) error("unexpected end of text");
    const std::size_t start = pos_;
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    const std::string_view tok = text_.substr(start, pos_ - start);
    if (tok.empty()) error("unexpected '" + std::string(text_.substr(start, 1)) + "'");
    if (std::isdigit(static_cast<unsigned char>(tok[0]))) {
      try {
        std::size_t used = 0;
        const std::uint64_t v = std::stoull(std::string(tok), &used, 0);
        if (used == tok.size()) return {nullptr, v};
      } catch (const std::exception&) {
      }
      error("bad number '" + std::string(tok) + "'");
    }
    auto e = resolve_(tok);
    if (!e) error("unknown name '" + std::string(tok) + "'");
    return {*e, 0};
  }

  ExprPool& pool_;
  std::string_view text_;
  const NameResolver& resolve_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr compile_constraint(ExprPool& pool, std::string_view text, const NameResolver& resolve) {
  return ConstraintParser(pool, text, resolve).run();
}

std::vector<Expr> compile_assumptions(ExprPool& pool, const Harness& h) {
  NameResolver resolve = [&](std::string_view name) -> std::optional<Expr> {
    if (auto w = h.symbol_width(name)) return pool.var(name, *w);
    return std::nullopt;
  };
  std::vector<Expr> out;
  for (const std::string& a : h.assumptions) out.push_back(compile_constraint(pool, a, resolve));
  return out;
}

Harness parse_harness(std::string_view json_text, std::string base_dir) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    fail(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) fail("document must be an object");
  static const char* kKeys[] = {"left",   "right",       "symbols",    "placements",
                                "annotations", "assumptions", "assertions", "loop_bound",
                                "concretions", "diff",        "solver"};
  for (const auto& [key, value] : doc.items()) {
    if (std::find(std::begin(kKeys), std::end(kKeys), key) == std::end(kKeys)) {
      fail("unknown key \"" + key + "\"");
    }
  }

  Harness h;
  h.base_dir = std::move(base_dir);
  for (Side s : {Side::Left, Side::Right}) {
    const json& p = require(doc, side_name(s).data(), "document");
    if (!p.is_string()) fail(std::string(side_name(s)) + " must be a program path");
    h.programs[index(s)] = p.get<std::string>();
  }

  const json& syms = require(doc, "symbols", "document");
  if (!syms.is_array()) fail("symbols must be a list");
  for (const json& s : syms) {
    if (!s.is_object() || !s.contains("name") || !s["name"].is_string()) {
      fail("each symbol needs a string \"name\" and a \"width\"");
    }
    const std::string name = s["name"].get<std::string>();
    const std::uint32_t w = as_u32(require(s, "width", "symbol " + name), "symbol " + name + " width");
    if (w != 1 && w != 8 && w != 16 && w != 32) {
      fail("symbol " + name + " has width " + std::to_string(w) + "; widths must be 1, 8, 16 or 32");
    }
    if (name.empty() || !std::all_of(name.begin(), name.end(), [](char c) {
          return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
        }) || std::isdigit(static_cast<unsigned char>(name[0]))) {
      fail("symbol name '" + name + "' is not an identifier");
    }
    if (h.symbol_width(name)) fail("symbol " + name + " declared twice");
    h.symbols.emplace_back(name, w);
  }

  if (doc.contains("placements")) {
    const json& pl = doc["placements"];
    if (!pl.is_object()) fail("placements must be an object");
    for (Side s : {Side::Left, Side::Right}) {
      if (!pl.contains(side_name(s))) continue;
      for (const auto& [sym, loc] : pl[side_name(s)].items()) {
        const std::string where = "placement " + std::string(side_name(s)) + "." + sym;
        auto w = h.symbol_width(sym);
        if (!w) fail(where + " names an undeclared symbol");
        Location l = parse_location(loc, where, false);
        if (!l.is_reg()) {
          if (*w % 8 != 0) fail(where + ": a " + std::to_string(*w) + "-bit symbol cannot live in memory");
          if (l.bytes != 0 && l.bytes != *w / 8) fail(where + ": byte length disagrees with the symbol width");
          l.bytes = *w / 8;
        }
        h.placements[index(s)][sym] = l;
      }
    }
  }

  if (doc.contains("annotations")) {
    const json& anns = doc["annotations"];
    if (!anns.is_array()) fail("annotations must be a list");
    for (const json& a : anns) {
      if (!a.is_object()) fail("each annotation must be an object");
      Annotation ann;
      const json& name = require(a, "name", "annotation");
      if (name.is_string()) {
        ann.name.push_back(name.get<std::string>());
      } else if (name.is_array() && !name.empty()) {
        for (const json& part : name) {
          if (part.is_string()) ann.name.push_back(part.get<std::string>());
          else if (part.is_number_integer()) ann.name.push_back(part.get<std::int64_t>());
          else fail("annotation name parts must be strings or integers");
        }
      } else {
        fail("annotation name must be a string or a nonempty list");
      }
      const std::string d = ann.display();
      for (Side s : {Side::Left, Side::Right}) {
        ann.at[index(s)] = parse_location(require(a, side_name(s).data(), "annotation " + d),
                                          "annotation " + d + "." + std::string(side_name(s)), true);
      }
      if (h.find_annotation(d)) fail("annotation " + d + " declared twice");
      h.annotations.push_back(std::move(ann));
    }
  }

  if (doc.contains("assumptions")) h.assumptions = string_list(doc["assumptions"], "assumptions");
  if (doc.contains("assertions")) h.assertions = string_list(doc["assertions"], "assertions");
  if (doc.contains("loop_bound")) h.loop_bound = as_u32(doc["loop_bound"], "loop_bound");
  if (h.loop_bound == 0) fail("loop_bound must be at least 1");
  if (doc.contains("concretions")) h.concretions = as_u32(doc["concretions"], "concretions");
  if (h.concretions == 0) fail("concretions must be at least 1");

  for (const Annotation& a : h.annotations) h.diff.annotations.push_back(a.display());
  if (doc.contains("diff")) {
    const json& d = doc["diff"];
    if (!d.is_object()) fail("diff must be an object");
    if (d.contains("annotations")) {
      h.diff.annotations = string_list(d["annotations"], "diff.annotations");
      for (const std::string& n : h.diff.annotations) {
        if (!h.find_annotation(n)) fail("diff names unknown annotation " + n);
      }
    }
    auto flag = [&](const char* key, bool& out) {
      if (!d.contains(key)) return;
      if (!d[key].is_boolean()) fail(std::string("diff.") + key + " must be a boolean");
      out = d[key].get<bool>();
    };
    flag("status", h.diff.status);
    flag("io", h.diff.io);
    flag("concretize_equal", h.diff.concretize_equal);
  }

  if (doc.contains("solver")) {
    const json& s = doc["solver"];
    if (!s.is_object()) fail("solver must be an object");
    if (s.contains("kind")) h.solver.kind = s["kind"].get<std::string>();
    if (h.solver.kind != "embedded" && h.solver.kind != "external") {
      fail("solver.kind must be embedded or external");
    }
    if (s.contains("command")) h.solver.command = s["command"].get<std::string>();
    if (s.contains("core_minimize")) h.solver.core_minimize = s["core_minimize"].get<bool>();
    if (s.contains("max_conflicts")) h.solver.max_conflicts = s["max_conflicts"].get<std::uint64_t>();
    if (s.contains("timeout_ms")) h.solver.timeout_ms = s["timeout_ms"].get<std::uint64_t>();
  }

  // Names in constraints must be declared; widths are checked on compile.
  ExprPool scratch;
  compile_assumptions(scratch, h);
  return h;
}

Harness load_harness(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open harness file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  std::string dir = std::filesystem::path(path).parent_path().string();
  return parse_harness(ss.str(), dir.empty() ? "." : dir);
}

std::string harness_to_json(const Harness& h) {
  json doc;
  doc["left"] = h.programs[0];
  doc["right"] = h.programs[1];
  doc["symbols"] = json::array();
  for (const auto& [name, w] : h.symbols) doc["symbols"].push_back({{"name", name}, {"width", w}});
  doc["placements"] = json::object();
  for (Side s : {Side::Left, Side::Right}) {
    json side = json::object();
    for (const auto& [sym, loc] : h.placements[index(s)]) side[sym] = location_json(loc);
    doc["placements"][side_name(s)] = side;
  }
  doc["annotations"] = json::array();
  for (const Annotation& a : h.annotations) {
    json name = json::array();
    for (const NamePart& p : a.name) {
      if (const auto* s = std::get_if<std::string>(&p)) name.push_back(*s);
      else name.push_back(std::get<std::int64_t>(p));
    }
    doc["annotations"].push_back({{"name", name},
                                  {"left", location_json(a.at[0])},
                                  {"right", location_json(a.at[1])}});
  }
  doc["assumptions"] = h.assumptions;
  doc["assertions"] = h.assertions;
  doc["loop_bound"] = h.loop_bound;
  doc["concretions"] = h.concretions;
  doc["diff"] = {{"annotations", h.diff.annotations},
                 {"status", h.diff.status},
                 {"io", h.diff.io},
                 {"concretize_equal", h.diff.concretize_equal}};
  doc["solver"] = {{"kind", h.solver.kind},
                   {"command", h.solver.command},
                   {"core_minimize", h.solver.core_minimize},
                   {"max_conflicts", h.solver.max_conflicts},
                   {"timeout_ms", h.solver.timeout_ms}};
  return doc.dump(2);
}

namespace {

std::uint32_t location_width(const Location& loc, const Program& p, const std::string& where) {
  if (loc.is_reg()) {
    auto r = p.find_register(*loc.reg);
    if (!r) fail(where + ": program " + p.name + " has no register '" + *loc.reg + "'");
    return p.width_of(*r);
  }
  if (loc.bytes == 0 || loc.bytes > 8) fail(where + ": byte length must be between 1 and 8");
  if (std::uint64_t{loc.addr} + loc.bytes > kAddressSpaceSize) {
    fail(where + " lies outside the address space");
  }
  return loc.bytes * 8;
}

}  // namespace

void validate_harness(const Harness& h, const Program& left, const Program& right) {
  const Program* progs[2] = {&left, &right};
  for (Side s : {Side::Left, Side::Right}) {
    const Program& p = *progs[index(s)];
    const auto& placements = h.placements[index(s)];
    for (const auto& [name, w] : h.symbols) {
      if (!placements.count(name)) {
        fail("symbol " + name + " has no " + std::string(side_name(s)) + " placement");
      }
    }
    std::vector<std::pair<std::uint32_t, std::uint32_t>> ranges;  // [addr, end)
    std::set<std::string> regs;
    for (const auto& [sym, loc] : placements) {
      const std::string where = "placement " + std::string(side_name(s)) + "." + sym;
      const std::uint32_t w = location_width(loc, p, where);
      if (w != *h.symbol_width(sym)) {
        fail(where + ": location width " + std::to_string(w) + " differs from the symbol width");
      }
      if (loc.is_reg()) {
        if (!regs.insert(*loc.reg).second) fail(where + " reuses register " + *loc.reg);
      } else {
        ranges.emplace_back(loc.addr, loc.addr + loc.bytes);
      }
    }
    std::sort(ranges.begin(), ranges.end());
    for (std::size_t i = 1; i < ranges.size(); ++i) {
      if (ranges[i].first < ranges[i - 1].second) {
        fail(std::string(side_name(s)) + " placements overlap at address " +
             std::to_string(ranges[i].first));
      }
    }
  }
  for (const Annotation& a : h.annotations) {
    const std::string d = a.display();
    const std::uint32_t lw = location_width(a.at[0], left, "annotation " + d + ".left");
    const std::uint32_t rw = location_width(a.at[1], right, "annotation " + d + ".right");
    if (lw != rw) {
      fail("annotation " + d + " covers " + std::to_string(lw) + " bits on the left but " +
           std::to_string(rw) + " on the right");
    }
  }

  ExprPool scratch;
  compile_assumptions(scratch, h);
  for (const std::string& text : h.assertions) {
    NameResolver resolve = [&](std::string_view name) -> std::optional<Expr> {
      if (auto w = h.symbol_width(name)) return scratch.var(name, *w);
      if (const Annotation* a = h.find_annotation(name)) {
        return scratch.var("@" + std::string(name), location_width(a->at[0], left, "annotation"));
      }
      return std::nullopt;
    };
    compile_constraint(scratch, text, resolve);
  }
}

ConcreteInput concrete_input(const Harness& h, Side side, const Assignment& symbols) {
  ConcreteInput in;
  for (const auto& [sym, loc] : h.placements[index(side)]) {
    auto it = symbols.find(sym);
    const std::uint64_t v = it == symbols.end() ? 0 : it->second;
    if (loc.is_reg()) {
      in.registers[*loc.reg] = v;
    } else {
      for (std::uint32_t i = 0; i < loc.bytes; ++i) {
        in.memory[loc.addr + i] = static_cast<std::uint8_t>(v >> (8 * i));
      }
    }
  }
  return in;
}

ConcreteOutcome run_concrete(const Harness& h, Side side, const Program& program,
                             const Assignment& symbols) {
  ConcreteOutcome o = interpret(program, concrete_input(h, side, symbols), h.loop_bound);
  if (o.status != Status::Finished || h.assertions.empty()) return o;
  ExprPool pool;
  NameResolver resolve = [&](std::string_view name) -> std::optional<Expr> {
    if (auto w = h.symbol_width(name)) {
      auto it = symbols.find(std::string(name));
      return pool.constant(*w, it == symbols.end() ? 0 : it->second);
    }
    if (const Annotation* a = h.find_annotation(name)) {
      const Location& loc = a->at[index(side)];
      const std::uint32_t w =
          loc.is_reg() ? program.width_of(*program.find_register(*loc.reg)) : loc.bytes * 8;
      return pool.constant(w, read_location(o, loc));
    }
    return std::nullopt;
  };
  for (const std::string& text : h.assertions) {
    if (eval(compile_constraint(pool, text, resolve), {}) == 0) {
      o.status = Status::AssertFailed;
      break;
    }
  }
  return o;
}

std::uint64_t read_location(const ConcreteOutcome& o, const Location& loc) {
  if (loc.is_reg()) {
    auto it = o.final_registers.find(*loc.reg);
    return it == o.final_registers.end() ? 0 : it->second;
  }
  return read_le(o.final_memory, loc.addr, loc.bytes);
}

}  // namespace twinsym
