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


#include "twinsym/session.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "twinsym/error.hpp"

namespace twinsym {

using json = nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& msg) { throw SessionError("session: " + msg); }

constexpr Side kSides[] = {Side::Left, Side::Right};

// --- writing ---------------------------------------------------------------

json assignment_json(const Assignment& a) {
  json out = json::object();
  for (const auto& [k, v] : a) out[k] = v;
  return out;
}

json concretion_json(const Concretion& c) {
  json values = json::object();
  for (const auto& [name, lr] : c.values) values[name] = {lr.first, lr.second};
  return {{"inputs", assignment_json(c.inputs)}, {"values", values}};
}

json concretions_json(const std::vector<Concretion>& cs) {
  json out = json::array();
  for (const Concretion& c : cs) out.push_back(concretion_json(c));
  return out;
}

json node_json(const TreeNode& n) {
  json events = json::array();
  for (const Event& e : n.events) {
    json ev = {{"kind", event_kind_name(e.kind)}, {"instr", e.instr}};
    switch (e.kind) {
      case Event::Kind::InstrExec:
        break;
      case Event::Kind::MemRead:
      case Event::Kind::MemWrite:
        ev["addr"] = e.addr;
        ev["value"] = e.value;
        break;
      case Event::Kind::RegWrite:
        ev["reg"] = e.reg;
        ev["value"] = e.value;
        break;
      case Event::Kind::IO:
        ev["value"] = e.value;
        break;
    }
    events.push_back(std::move(ev));
  }
  json out = {{"id", n.id},
              {"parent", n.parent ? json(*n.parent) : json(nullptr)},
              {"children", n.children},
              {"delta", n.delta},
              {"events", events},
              {"status", status_name(n.status)},
              {"quarantined", n.quarantined}};
  if (n.terminal) {
    json regs = json::object();
    for (const auto& [name, id] : n.terminal->regs) regs[name] = id;
    json mem = json::array();
    for (const auto& [addr, id] : n.terminal->mem) mem.push_back({addr, id});
    out["terminal"] = {{"regs", regs}, {"mem", mem}};
  } else {
    out["terminal"] = nullptr;
  }
  return out;
}

json pair_list(const std::set<LeafPair>& pairs) {
  json out = json::array();
  for (const auto& [l, r] : pairs) out.push_back({l, r});
  return out;
}

json verdict_json(const RefinementVerdict& v) {
  return {{"kind", refinement_name(v.kind)},
          {"left_only", v.left_only ? assignment_json(*v.left_only) : json(nullptr)},
          {"right_only", v.right_only ? assignment_json(*v.right_only) : json(nullptr)}};
}

json pair_json(const PairRecord& p, const DiffTargets& wanted) {
  const DiffReport& d = p.diff;
  json targets = json::array();
  for (const TargetDiff& t : d.targets) {
    targets.push_back({{"name", t.name},
                       {"verdict", verdict_name(t.verdict)},
                       {"left", t.left},
                       {"right", t.right},
                       {"concretions", concretions_json(t.concretions)},
                       {"partial", t.partial}});
  }
  json positions = json::array();
  for (Verdict v : d.io.positions) positions.push_back(verdict_name(v));
  return {{"left", p.pair.first},
          {"right", p.pair.second},
          {"verdict", verdict_name(pair_verdict(p, wanted))},
          {"status", {{"left", status_name(d.left_status)},
                      {"right", status_name(d.right_status)},
                      {"differs", d.status_differs()}}},
          {"targets", targets},
          {"io", {{"left_length", d.io.left_length},
                  {"right_length", d.io.right_length},
                  {"positions", positions},
                  {"verdict", verdict_name(d.io.verdict)}}},
          {"concretions", concretions_json(d.pair_concretions)},
          {"concretions_partial", d.pair_concretions_partial},
          {"refinement", p.refinement ? verdict_json(*p.refinement) : json(nullptr)}};
}

json compressed_json(const CompressedTree& t) {
  json nodes = json::array();
  for (const CompressedNode& n : t.nodes) {
    nodes.push_back({{"id", n.id},
                     {"parent", n.parent ? json(*n.parent) : json(nullptr)},
                     {"children", n.children},
                     {"members", n.members},
                     {"delta", n.delta}});
  }
  return nodes;
}

json stats_json(const ExecStats& s) {
  return {{"solver_queries", s.solver_queries}, {"splits", s.splits}, {"steps", s.steps}};
}

// --- reading ---------------------------------------------------------------

const json& at(const json& obj, const char* key) {
  if (!obj.is_object()) fail(std::string("expected an object holding \"") + key + "\"");
  auto it = obj.find(key);
  if (it == obj.end()) fail(std::string("missing \"") + key + "\"");
  return *it;
}

template <typename T>
T get(const json& obj, const char* key) {
  try {
    return at(obj, key).get<T>();
  } catch (const json::exception& e) {
    fail(std::string("bad \"") + key + "\": " + e.what());
  }
}

Status read_status(const json& v) {
  auto s = status_from_name(v.get<std::string>());
  if (!s) fail("unknown status " + v.dump());
  return *s;
}

Verdict read_verdict(const json& v) {
  auto s = verdict_from_name(v.get<std::string>());
  if (!s) fail("unknown verdict " + v.dump());
  return *s;
}

Assignment read_assignment(const json& v) {
  Assignment a;
  for (const auto& [k, x] : v.items()) a[k] = x.get<std::uint64_t>();
  return a;
}

std::vector<Concretion> read_concretions(const json& v) {
  std::vector<Concretion> out;
  for (const json& c : v) {
    Concretion x;
    x.inputs = read_assignment(at(c, "inputs"));
    for (const auto& [name, lr] : at(c, "values").items()) {
      x.values[name] = {lr.at(0).get<std::uint64_t>(), lr.at(1).get<std::uint64_t>()};
    }
    out.push_back(std::move(x));
  }
  return out;
}

TreeNode read_node(const json& v) {
  TreeNode n;
  n.id = get<NodeId>(v, "id");
  if (!at(v, "parent").is_null()) n.parent = get<NodeId>(v, "parent");
  n.children = get<std::vector<NodeId>>(v, "children");
  n.delta = get<std::vector<ExprId>>(v, "delta");
  for (const json& e : at(v, "events")) {
    Event ev;
    auto kind = event_kind_from_name(get<std::string>(e, "kind"));
    if (!kind) fail("unknown event kind " + at(e, "kind").dump());
    ev.kind = *kind;
    ev.instr = get<std::uint32_t>(e, "instr");
    if (e.contains("addr")) ev.addr = get<std::uint32_t>(e, "addr");
    if (e.contains("reg")) ev.reg = get<std::string>(e, "reg");
    if (e.contains("value")) ev.value = get<ExprId>(e, "value");
    n.events.push_back(std::move(ev));
  }
  n.status = read_status(at(v, "status"));
  n.quarantined = get<bool>(v, "quarantined");
  const json& t = at(v, "terminal");
  if (!t.is_null()) {
    Snapshot s;
    for (const auto& [name, id] : at(t, "regs").items()) s.regs[name] = id.get<ExprId>();
    for (const json& m : at(t, "mem")) s.mem[m.at(0).get<std::uint32_t>()] = m.at(1).get<ExprId>();
    n.terminal = std::move(s);
  }
  return n;
}

std::set<LeafPair> read_pairs(const json& v) {
  std::set<LeafPair> out;
  for (const json& p : v) out.emplace(p.at(0).get<NodeId>(), p.at(1).get<NodeId>());
  return out;
}

PairRecord read_pair(const json& v) {
  PairRecord p;
  p.pair = {get<NodeId>(v, "left"), get<NodeId>(v, "right")};
  DiffReport& d = p.diff;
  const json& st = at(v, "status");
  d.left_status = read_status(at(st, "left"));
  d.right_status = read_status(at(st, "right"));
  for (const json& t : at(v, "targets")) {
    TargetDiff x;
    x.name = get<std::string>(t, "name");
    x.verdict = read_verdict(at(t, "verdict"));
    x.left = get<ExprId>(t, "left");
    x.right = get<ExprId>(t, "right");
    x.concretions = read_concretions(at(t, "concretions"));
    x.partial = get<bool>(t, "partial");
    d.targets.push_back(std::move(x));
  }
  const json& io = at(v, "io");
  d.io.left_length = get<std::size_t>(io, "left_length");
  d.io.right_length = get<std::size_t>(io, "right_length");
  for (const json& pos : at(io, "positions")) d.io.positions.push_back(read_verdict(pos));
  d.io.verdict = read_verdict(at(io, "verdict"));
  d.pair_concretions = read_concretions(at(v, "concretions"));
  d.pair_concretions_partial = get<bool>(v, "concretions_partial");
  const json& r = at(v, "refinement");
  if (!r.is_null()) {
    RefinementVerdict rv;
    auto kind = refinement_from_name(get<std::string>(r, "kind"));
    if (!kind) fail("unknown refinement " + at(r, "kind").dump());
    rv.kind = *kind;
    if (!at(r, "left_only").is_null()) rv.left_only = read_assignment(at(r, "left_only"));
    if (!at(r, "right_only").is_null()) rv.right_only = read_assignment(at(r, "right_only"));
    p.refinement = std::move(rv);
  }
  return p;
}

CompressedTree read_compressed(const json& v, int level) {
  CompressedTree t;
  t.level = level;
  for (const json& n : v) {
    CompressedNode c;
    c.id = get<std::uint32_t>(n, "id");
    if (!at(n, "parent").is_null()) c.parent = get<std::uint32_t>(n, "parent");
    c.children = get<std::vector<std::uint32_t>>(n, "children");
    c.members = get<std::vector<NodeId>>(n, "members");
    c.delta = get<std::vector<ExprId>>(n, "delta");
    t.nodes.push_back(std::move(c));
  }
  return t;
}

ExecStats read_stats(const json& v) {
  return ExecStats{get<std::uint64_t>(v, "solver_queries"), get<std::uint64_t>(v, "splits"),
                   get<std::uint64_t>(v, "steps")};
}

}  // namespace

const PairRecord* SessionDoc::find_pair(LeafPair p) const {
  auto it = std::lower_bound(pairs.begin(), pairs.end(), p,
                             [](const PairRecord& r, const LeafPair& k) { return r.pair < k; });
  return it != pairs.end() && it->pair == p ? &*it : nullptr;
}

std::vector<LeafPair> SessionDoc::differing_pairs() const {
  std::vector<LeafPair> out;
  for (const PairRecord& p : pairs) {
    if (p.diff.differs(harness.diff)) out.push_back(p.pair);
  }
  return out;
}

bool SessionDoc::has_unknowns() const {
  if (!matrix.unknown.empty()) return true;
  for (const ExecTree& t : trees) {
    if (!t.quarantined().empty()) return true;
  }
  return std::any_of(pairs.begin(), pairs.end(),
                     [&](const PairRecord& p) { return p.diff.unknown(harness.diff); });
}

Verdict pair_verdict(const PairRecord& p, const DiffTargets& wanted) {
  if (p.diff.differs(wanted)) return Verdict::Differs;
  if (p.diff.unknown(wanted)) return Verdict::Unknown;
  return Verdict::ProvedEqual;
}

void collect_exprs(SessionDoc& doc, const ExprPool& pool) {
  auto add = [&](ExprId id) {
    if (doc.exprs.count(id)) return;
    Expr e = pool.get(id);
    if (!e) throw SessionError("session: expression " + std::to_string(id) + " is not in the pool");
    doc.exprs[id] = to_string(e);
  };
  for (const ExecTree& t : doc.trees) {
    for (const TreeNode& n : t.nodes) {
      for (ExprId id : n.delta) add(id);
      for (const Event& e : n.events) {
        if (e.kind != Event::Kind::InstrExec) add(e.value);
      }
      if (n.terminal) {
        for (const auto& [r, id] : n.terminal->regs) add(id);
        for (const auto& [a, id] : n.terminal->mem) add(id);
      }
    }
  }
  for (const PairRecord& p : doc.pairs) {
    for (const TargetDiff& t : p.diff.targets) {
      add(t.left);
      add(t.right);
    }
  }
}

void check_consistency(const SessionDoc& doc) {
  auto expr = [&](ExprId id, const std::string& where) {
    if (!doc.exprs.count(id)) fail(where + " references missing expression " + std::to_string(id));
  };
  for (Side s : kSides) {
    const ExecTree& t = doc.trees[index(s)];
    const std::string side(side_name(s));
    if (t.side != s) fail(side + " tree carries the wrong side tag");
    if (t.nodes.empty()) fail(side + " tree is empty");
    for (std::size_t i = 0; i < t.nodes.size(); ++i) {
      const TreeNode& n = t.nodes[i];
      const std::string where = side + " node " + std::to_string(i);
      if (n.id != i) fail(where + " has id " + std::to_string(n.id));
      if ((i == 0) != !n.parent) fail(where + " has a bad parent");
      if (n.parent) {
        if (*n.parent >= i) fail(where + " has parent " + std::to_string(*n.parent));
        const auto& sib = t.nodes[*n.parent].children;
        if (std::find(sib.begin(), sib.end(), n.id) == sib.end()) {
          fail(where + " is missing from its parent's children");
        }
      }
      for (NodeId c : n.children) {
        if (c >= t.nodes.size() || t.nodes[c].parent != n.id) {
          fail(where + " lists child " + std::to_string(c) + " that does not point back");
        }
      }
      for (ExprId id : n.delta) expr(id, where);
      for (const Event& e : n.events) {
        if (e.kind != Event::Kind::InstrExec) expr(e.value, where);
      }
      if (n.terminal) {
        for (const auto& [r, id] : n.terminal->regs) expr(id, where);
        for (const auto& [a, id] : n.terminal->mem) expr(id, where);
      }
    }
    for (const auto& [id, cats] : doc.highlights[index(s)]) {
      if (id >= t.nodes.size()) fail(side + " highlight references node " + std::to_string(id));
    }
    for (const CompressedNode& c : doc.view.compressed[index(s)].nodes) {
      for (NodeId m : c.members) {
        if (m >= t.nodes.size()) fail(side + " compressed node references node " + std::to_string(m));
      }
    }
    if (doc.view.visible) {
      const auto& vis = s == Side::Left ? doc.view.visible->left : doc.view.visible->right;
      for (NodeId id : vis) {
        if (id >= t.nodes.size()) fail(side + " visible set references node " + std::to_string(id));
      }
    }
  }
  const std::vector<NodeId> ll = doc.trees[0].leaves();
  const std::vector<NodeId> rl = doc.trees[1].leaves();
  auto leaf_pair = [&](const LeafPair& p, const std::string& what) {
    if (!std::binary_search(ll.begin(), ll.end(), p.first) ||
        !std::binary_search(rl.begin(), rl.end(), p.second)) {
      fail(what + " (" + std::to_string(p.first) + ", " + std::to_string(p.second) +
           ") does not name two leaves");
    }
  };
  for (const LeafPair& p : doc.matrix.pairs) leaf_pair(p, "compatible pair");
  for (const LeafPair& p : doc.matrix.unknown) {
    leaf_pair(p, "unknown pair");
    if (doc.matrix.pairs.count(p)) fail("a pair is both compatible and unknown");
  }
  for (std::size_t i = 0; i < doc.pairs.size(); ++i) {
    const PairRecord& p = doc.pairs[i];
    if (!doc.matrix.pairs.count(p.pair)) fail("diffed pair is not compatible");
    if (i > 0 && !(doc.pairs[i - 1].pair < p.pair)) fail("pairs are not sorted");
    for (const TargetDiff& t : p.diff.targets) {
      expr(t.left, "pair target");
      expr(t.right, "pair target");
    }
  }
  if (doc.pairs.size() != doc.matrix.pairs.size()) {
    fail("every compatible pair needs a diff record (" + std::to_string(doc.matrix.pairs.size()) +
         " pairs, " + std::to_string(doc.pairs.size()) + " records)");
  }
}

std::string export_session(const SessionDoc& doc) {
  check_consistency(doc);
  json out;
  out["schema_version"] = doc.schema_version;
  out["engine_version"] = doc.engine_version;
  out["harness"] = json::parse(harness_to_json(doc.harness));
  out["programs"] = json::object();
  for (Side s : kSides) {
    out["programs"][side_name(s)] = {{"name", doc.programs[index(s)].name},
                                     {"source", doc.programs[index(s)].source}};
  }
  json exprs = json::array();
  for (const auto& [id, text] : doc.exprs) exprs.push_back({{"id", id}, {"text", text}});
  out["expressions"] = exprs;
  out["trees"] = json::object();
  out["leaves"] = json::object();
  out["highlights"] = json::object();
  for (Side s : kSides) {
    json nodes = json::array();
    for (const TreeNode& n : doc.trees[index(s)].nodes) nodes.push_back(node_json(n));
    out["trees"][side_name(s)] = {{"nodes", nodes}};
    out["leaves"][side_name(s)] = doc.trees[index(s)].leaves();
    json hl = json::object();
    for (const auto& [id, cats] : doc.highlights[index(s)]) {
      json names = json::array();
      for (Category c : cats) names.push_back(category_name(c));
      hl[std::to_string(id)] = names;
    }
    out["highlights"][side_name(s)] = hl;
  }
  const CompatStats& st = doc.matrix.stats;
  out["compat"] = {{"pairs", pair_list(doc.matrix.pairs)},
                   {"unknown", pair_list(doc.matrix.unknown)},
                   {"stats", {{"pairs_checked", st.pairs_checked},
                              {"sat_queries_issued", st.sat_queries_issued},
                              {"cache_hits", st.cache_hits},
                              {"cores_cached", st.cores_cached}}},
                   {"cache_size", doc.cores_cached}};
  json pairs = json::array();
  for (const PairRecord& p : doc.pairs) pairs.push_back(pair_json(p, doc.harness.diff));
  out["pairs"] = pairs;
  json prune = json::array();
  for (const PruneRelation& r : doc.view.prune) prune.push_back(r.to_string());
  json visible = nullptr;
  if (doc.view.visible) {
    visible = {{"left", doc.view.visible->left}, {"right", doc.view.visible->right}};
  }
  out["view"] = {{"compress", doc.view.compress},
                 {"prune", prune},
                 {"visible", visible},
                 {"compressed", {{"left", compressed_json(doc.view.compressed[0])},
                                 {"right", compressed_json(doc.view.compressed[1])}}}};
  out["stats"] = {{"left", stats_json(doc.exec_stats[0])}, {"right", stats_json(doc.exec_stats[1])}};
  return out.dump(1) + "\n";
}

SessionDoc import_session(std::string_view text) {
  json in;
  try {
    in = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(std::string("malformed JSON: ") + e.what());
  }
  if (!in.is_object()) fail("document must be an object");
  SessionDoc doc;
  doc.schema_version = get<int>(in, "schema_version");
  if (doc.schema_version != kSchemaVersion) {
    fail("schema version " + std::to_string(doc.schema_version) + " is not supported (expected " +
         std::to_string(kSchemaVersion) + ")");
  }
  try {
    doc.engine_version = get<std::string>(in, "engine_version");
    try {
      doc.harness = parse_harness(at(in, "harness").dump(), "");
    } catch (const ValidationError& e) {
      fail(std::string("embedded harness: ") + e.what());
    }
    for (Side s : kSides) {
      const json& p = at(at(in, "programs"), side_name(s).data());
      doc.programs[index(s)] = {get<std::string>(p, "name"), get<std::string>(p, "source")};
    }
    for (const json& e : at(in, "expressions")) doc.exprs[get<ExprId>(e, "id")] = get<std::string>(e, "text");
    for (Side s : kSides) {
      ExecTree& t = doc.trees[index(s)];
      t.side = s;
      for (const json& n : at(at(at(in, "trees"), side_name(s).data()), "nodes")) {
        t.nodes.push_back(read_node(n));
      }
      for (const auto& [id, cats] : at(at(in, "highlights"), side_name(s).data()).items()) {
        std::set<Category> cs;
        for (const json& c : cats) {
          auto cat = category_from_name(c.get<std::string>());
          if (!cat) fail("unknown highlight category " + c.dump());
          cs.insert(*cat);
        }
        doc.highlights[index(s)][static_cast<NodeId>(std::stoul(id))] = std::move(cs);
      }
    }
    const json& compat = at(in, "compat");
    doc.matrix.pairs = read_pairs(at(compat, "pairs"));
    doc.matrix.unknown = read_pairs(at(compat, "unknown"));
    const json& st = at(compat, "stats");
    doc.matrix.stats = CompatStats{get<std::uint64_t>(st, "pairs_checked"),
                                   get<std::uint64_t>(st, "sat_queries_issued"),
                                   get<std::uint64_t>(st, "cache_hits"),
                                   get<std::uint64_t>(st, "cores_cached")};
    doc.cores_cached = get<std::size_t>(compat, "cache_size");
    for (const json& p : at(in, "pairs")) doc.pairs.push_back(read_pair(p));
    const json& view = at(in, "view");
    doc.view.compress = get<int>(view, "compress");
    for (const json& r : at(view, "prune")) {
      try {
        doc.view.prune.push_back(PruneRelation::parse(r.get<std::string>()));
      } catch (const ValidationError& e) {
        fail(e.what());
      }
    }
    if (!at(view, "visible").is_null()) {
      VisibleNodes v;
      v.left = get<std::set<NodeId>>(at(view, "visible"), "left");
      v.right = get<std::set<NodeId>>(at(view, "visible"), "right");
      doc.view.visible = std::move(v);
    }
    for (Side s : kSides) {
      doc.view.compressed[index(s)] =
          read_compressed(at(at(view, "compressed"), side_name(s).data()), doc.view.compress);
    }
    for (Side s : kSides) doc.exec_stats[index(s)] = read_stats(at(at(in, "stats"), side_name(s).data()));
  } catch (const json::exception& e) {
    fail(std::string("malformed document: ") + e.what());
  } catch (const std::invalid_argument&) {
    fail("malformed node id");
  }
  check_consistency(doc);
  return doc;
}

SessionDoc load_session(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SessionError("cannot open session file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return import_session(ss.str());
}

std::uint64_t session_hash(std::string_view serialized) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : serialized) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string hash_hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

AcceptFile parse_accept_file(std::string_view text) {
  AcceptFile f;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t no = 0;
  while (std::getline(in, line)) {
    ++no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    line = line.substr(first, line.find_last_not_of(" \t") - first + 1);
    if (line[0] == '#') {
      std::istringstream words(line.substr(1));
      std::string key, value;
      if (words >> key >> value && key == "session") f.session_hash = value;
      continue;
    }
    const auto comma = line.find(',');
    try {
      if (comma == std::string::npos) throw std::invalid_argument("no comma");
      std::size_t used_l = 0, used_r = 0;
      const std::string l = line.substr(0, comma);
      const std::string r = line.substr(comma + 1);
      const unsigned long a = std::stoul(l, &used_l);
      const unsigned long b = std::stoul(r, &used_r);
      if (used_l != l.size() || used_r != r.size()) throw std::invalid_argument("trailing text");
      if (!std::isdigit(static_cast<unsigned char>(l[0])) || !std::isdigit(static_cast<unsigned char>(r[0]))) {
        throw std::invalid_argument("not a leaf id");
      }
      f.pairs.emplace(static_cast<NodeId>(a), static_cast<NodeId>(b));
    } catch (const std::exception&) {
      throw ParseError(no, "accept file: expected leftLeafId,rightLeafId");
    }
  }
  if (f.session_hash.empty()) throw ParseError(0, "accept file: missing '# session <hash>' header");
  return f;
}

std::string write_accept_file(const AcceptFile& f) {
  std::string out = "# session " + f.session_hash + "\n";
  for (const auto& [l, r] : f.pairs) out += std::to_string(l) + "," + std::to_string(r) + "\n";
  return out;
}

}  // namespace twinsym
