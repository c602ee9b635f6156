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


#include "twinsym/report.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "twinsym/analysis.hpp"
#include "twinsym/error.hpp"
#include "twinsym/ir.hpp"

namespace twinsym {

namespace {

const std::array<Side, 2> kSides = {Side::Left, Side::Right};

std::string pair_text(LeafPair p) { return std::to_string(p.first) + "," + std::to_string(p.second); }

// Memory targets wider than one byte read as their bytes in address order.
std::string target_value(const Harness& h, const std::string& target, Side side, std::uint64_t v) {
  const Annotation* a = h.find_annotation(target);
  if (!a || a->at[index(side)].is_reg() || a->at[index(side)].bytes <= 1) return std::to_string(v);
  std::string out = "[";
  for (std::uint32_t i = 0; i < a->at[index(side)].bytes; ++i) {
    if (i) out += ' ';
    out += std::to_string((v >> (8 * i)) & 0xff);
  }
  return out + "]";
}

// Fixed-width text table; the first row is the header.
void table(std::ostream& os, const std::vector<std::vector<std::string>>& rows, const std::string& indent) {
  if (rows.empty()) return;
  std::vector<std::size_t> width(rows[0].size(), 0);
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
  }
  for (std::size_t n = 0; n < rows.size(); ++n) {
    std::string line = indent;
    for (std::size_t i = 0; i < rows[n].size(); ++i) {
      if (i) line += " | ";
      line += rows[n][i] + std::string(width[i] - rows[n][i].size(), ' ');
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    os << line << "\n";
    if (n == 0) {
      std::string rule = indent;
      for (std::size_t i = 0; i < width.size(); ++i) {
        if (i) rule += "-+-";
        rule += std::string(width[i], '-');
      }
      os << rule << "\n";
    }
  }
}

void concretion_table(std::ostream& os, const SessionDoc& doc, const std::vector<Concretion>& cs) {
  if (cs.empty()) return;
  const Harness& h = doc.harness;
  std::vector<std::vector<std::string>> rows(1);
  for (const auto& [name, w] : h.symbols) rows[0].push_back(name);
  for (const std::string& t : h.diff.annotations) {
    rows[0].push_back("left " + t);
    rows[0].push_back("right " + t);
  }
  for (const Concretion& c : cs) {
    std::vector<std::string> row;
    for (const auto& [name, w] : h.symbols) {
      auto it = c.inputs.find(name);
      row.push_back(std::to_string(it == c.inputs.end() ? 0 : it->second));
    }
    for (const std::string& t : h.diff.annotations) {
      auto it = c.values.find(t);
      if (it == c.values.end()) {
        row.insert(row.end(), {"-", "-"});
        continue;
      }
      row.push_back(target_value(h, t, Side::Left, it->second.first));
      row.push_back(target_value(h, t, Side::Right, it->second.second));
    }
    rows.push_back(std::move(row));
  }
  table(os, rows, "      ");
}

}  // namespace

std::string render_report(const SessionDoc& doc) {
  const Harness& h = doc.harness;
  std::ostringstream os;
  os << "twinsym report (" << doc.engine_version << ", schema " << doc.schema_version << ")\n";
  os << "analysis " << analysis_key(doc) << "\n\n";

  for (Side side : kSides) {
    const ExecTree& t = doc.trees[index(side)];
    os << side_name(side) << ": " << doc.programs[index(side)].name << ", " << t.nodes.size()
       << " nodes, " << t.leaves().size() << " leaves, " << t.quarantined().size() << " quarantined\n";
  }
  os << "compatible pairs: " << doc.matrix.pairs.size() << "\n";
  os << "undecided pairs: " << doc.matrix.unknown.size() << "\n";
  const CompatStats& s = doc.matrix.stats;
  os << "cache: " << s.pairs_checked << " pairs checked, " << s.sat_queries_issued << " sat queries, "
     << s.cache_hits << " cache hits, " << s.cores_cached << " cores inserted, " << doc.cores_cached
     << " cores kept\n\n";

  os << "verdicts:\n";
  std::size_t differing = 0;
  std::size_t unknown = 0;
  for (const PairRecord& p : doc.pairs) {
    const Verdict v = pair_verdict(p, h.diff);
    differing += v == Verdict::Differs;
    unknown += v == Verdict::Unknown;
    os << "  pair " << pair_text(p.pair) << ": " << verdict_name(v) << " (" << status_name(p.diff.left_status)
       << " / " << status_name(p.diff.right_status) << ")";
    if (p.refinement) os << " refinement " << refinement_name(p.refinement->kind);
    os << "\n";
  }
  if (doc.pairs.empty()) os << "  (none)\n";
  os << "\n";

  if (differing) os << "differences:\n";
  for (const PairRecord& p : doc.pairs) {
    if (pair_verdict(p, h.diff) != Verdict::Differs) continue;
    const DiffReport& d = p.diff;
    os << "  Differs pair " << pair_text(p.pair) << "\n";
    if (h.diff.status && d.status_differs()) {
      os << "    StatusDiffers " << status_name(d.left_status) << " vs " << status_name(d.right_status)
         << "\n";
    }
    if (h.diff.io && d.io.verdict == Verdict::Differs) {
      os << "    IoDiffers lengths " << d.io.left_length << " vs " << d.io.right_length << "\n";
    }
    for (const TargetDiff& t : d.targets) {
      if (t.verdict != Verdict::Differs) continue;
      os << "    MemoryDiffers(" << t.name << ")" << (t.partial ? " (concretions partial)" : "") << "\n";
      concretion_table(os, doc, t.concretions);
    }
    if (!d.pair_concretions.empty()) {
      os << "    inputs reaching this pair" << (d.pair_concretions_partial ? " (partial)" : "") << "\n";
      concretion_table(os, doc, d.pair_concretions);
    }
    if (p.refinement) {
      const RefinementVerdict& r = *p.refinement;
      os << "    refinement " << refinement_name(r.kind) << "\n";
      for (const auto& [label, model] : {std::pair{"left only", &r.left_only}, {"right only", &r.right_only}}) {
        if (!*model) continue;
        os << "      " << label << ":";
        for (const auto& [name, v] : **model) os << " " << name << "=" << v;
        os << "\n";
      }
    }
  }
  if (differing) os << "\n";

  os << "highlights:\n";
  for (Side side : kSides) {
    std::map<Category, std::size_t> counts;
    for (const auto& [id, cats] : doc.highlights[index(side)]) {
      for (Category c : cats) ++counts[c];
    }
    os << "  " << side_name(side) << ":";
    if (counts.empty()) os << " none";
    for (const auto& [c, n] : counts) os << " " << category_name(c) << " " << n;
    os << "\n";
  }
  os << "\n";

  if (unknown || doc.has_unknowns()) {
    os << "summary: undecided results present\n";
  } else if (differing) {
    os << "summary: " << differing << " differing pair" << (differing == 1 ? "" : "s") << "\n";
  } else {
    os << "summary: all compared targets proved equal\n";
  }
  return os.str();
}

std::vector<TestVector> test_vectors(const SessionDoc& doc) {
  const Harness& h = doc.harness;
  std::vector<TestVector> out;
  for (const PairRecord& p : doc.pairs) {
    std::set<Assignment> seen;
    auto add = [&](const std::string& source, const Concretion& c) {
      if (!seen.insert(c.inputs).second) return;
      TestVector v;
      v.index = out.size() + 1;
      v.pair = p.pair;
      v.source = source;
      v.inputs = c.inputs;
      for (Side side : kSides) v.setup[index(side)] = concrete_input(h, side, c.inputs);
      v.status = {p.diff.left_status, p.diff.right_status};
      for (const auto& [name, lr] : c.values) v.expected[name] = {lr.first, lr.second};
      out.push_back(std::move(v));
    };
    for (const TargetDiff& t : p.diff.targets) {
      for (const Concretion& c : t.concretions) add(t.name, c);
    }
    for (const Concretion& c : p.diff.pair_concretions) add("pair", c);
  }
  return out;
}

namespace {

std::string hex_byte(std::uint8_t b) {
  static const char* digits = "0123456789abcdef";
  return {digits[b >> 4], digits[b & 15]};
}

std::string setup_text(const ConcreteInput& in) {
  std::string out;
  for (const auto& [addr, byte] : in.memory) {
    if (!out.empty()) out += ',';
    std::ostringstream a;
    a << "0x" << std::hex << addr;
    out += a.str() + ":" + hex_byte(byte);
  }
  for (const auto& [reg, value] : in.registers) {
    if (!out.empty()) out += ',';
    out += "%" + reg + ":" + std::to_string(value);
  }
  return out.empty() ? "-" : out;
}

ConcreteInput parse_setup(const std::string& text) {
  ConcreteInput in;
  if (text == "-") return in;
  std::istringstream items(text);
  std::string item;
  while (std::getline(items, item, ',')) {
    const auto colon = item.rfind(':');
    if (colon == std::string::npos) throw std::invalid_argument("setup item");
    const std::string key = item.substr(0, colon);
    const std::string value = item.substr(colon + 1);
    if (!key.empty() && key[0] == '%') {
      in.registers[key.substr(1)] = std::stoull(value);
    } else {
      in.memory[static_cast<std::uint32_t>(std::stoul(key, nullptr, 0))] =
          static_cast<std::uint8_t>(std::stoul(value, nullptr, 16));
    }
  }
  return in;
}

}  // namespace

std::string write_test_vectors(const SessionDoc& doc, const std::vector<TestVector>& vectors) {
  std::ostringstream os;
  os << "# twinsym test vectors 1\n";
  os << "# analysis " << analysis_key(doc) << "\n";
  os << "# left " << doc.programs[0].name << ", right " << doc.programs[1].name << "\n";
  for (const TestVector& v : vectors) {
    os << "vector=" << v.index << " pair=" << pair_text(v.pair) << " source=" << v.source << " inputs=";
    bool first = true;
    for (const auto& [name, value] : v.inputs) {
      os << (first ? "" : ",") << name << ":" << value;
      first = false;
    }
    if (first) os << "-";
    for (Side side : kSides) os << " " << side_name(side) << ".setup=" << setup_text(v.setup[index(side)]);
    for (Side side : kSides) os << " " << side_name(side) << ".status=" << status_name(v.status[index(side)]);
    for (const auto& [name, lr] : v.expected) {
      for (Side side : kSides) os << " " << side_name(side) << "." << name << "=" << lr[index(side)];
    }
    os << "\n";
  }
  return os.str();
}

std::vector<TestVector> parse_test_vectors(std::string_view text) {
  std::vector<TestVector> out;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t no = 0;
  while (std::getline(in, line)) {
    ++no;
    if (line.empty() || line[0] == '#') continue;
    TestVector v;
    std::istringstream fields(line);
    std::string field;
    std::set<std::string> seen;
    try {
      while (fields >> field) {
        const auto eq = field.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("field without '='");
        const std::string key = field.substr(0, eq);
        const std::string value = field.substr(eq + 1);
        seen.insert(key);
        if (key == "vector") {
          v.index = std::stoul(value);
        } else if (key == "pair") {
          const auto comma = value.find(',');
          if (comma == std::string::npos) throw std::invalid_argument("pair");
          v.pair = {static_cast<NodeId>(std::stoul(value.substr(0, comma))),
                    static_cast<NodeId>(std::stoul(value.substr(comma + 1)))};
        } else if (key == "source") {
          v.source = value;
        } else if (key == "inputs") {
          if (value == "-") continue;
          std::istringstream items(value);
          std::string item;
          while (std::getline(items, item, ',')) {
            const auto colon = item.find(':');
            if (colon == std::string::npos) throw std::invalid_argument("input");
            v.inputs[item.substr(0, colon)] = std::stoull(item.substr(colon + 1));
          }
        } else {
          const auto dot = key.find('.');
          if (dot == std::string::npos) throw std::invalid_argument("unknown field");
          const std::string side = key.substr(0, dot);
          const std::string rest = key.substr(dot + 1);
          if (side != "left" && side != "right") throw std::invalid_argument("unknown side");
          const std::size_t i = side == "left" ? 0 : 1;
          if (rest == "setup") {
            v.setup[i] = parse_setup(value);
          } else if (rest == "status") {
            auto s = status_from_name(value);
            if (!s) throw std::invalid_argument("status");
            v.status[i] = *s;
          } else {
            v.expected[rest][i] = std::stoull(value);
          }
        }
      }
      for (const char* required :
           {"vector", "pair", "source", "inputs", "left.setup", "right.setup", "left.status", "right.status"}) {
        if (!seen.count(required)) throw std::invalid_argument(std::string("missing ") + required);
      }
    } catch (const std::exception& e) {
      throw ParseError(no, std::string("test vector: ") + e.what());
    }
    out.push_back(std::move(v));
  }
  return out;
}

ReplayResult replay(const SessionDoc& doc, const TestVector& v) {
  ReplayResult r;
  const Harness& h = doc.harness;
  for (Side side : kSides) {
    const std::size_t i = index(side);
    const std::string who(side_name(side));
    if (concrete_input(h, side, v.inputs) != v.setup[i]) {
      r.mismatches.push_back(who + ": setup does not match the inputs");
    }
    const Program program = parse_program(doc.programs[i].source);
    const ConcreteOutcome o = run_concrete(h, side, program, v.inputs);
    if (o.status != v.status[i]) {
      r.mismatches.push_back(who + ": status " + std::string(status_name(o.status)) + ", expected " +
                             std::string(status_name(v.status[i])));
    }
    for (const auto& [name, lr] : v.expected) {
      const Annotation* a = h.find_annotation(name);
      if (!a) {
        r.mismatches.push_back(who + ": unknown target " + name);
        continue;
      }
      const std::uint64_t got = read_location(o, a->at[i]);
      if (got != lr[i]) {
        r.mismatches.push_back(who + ": " + name + " = " + std::to_string(got) + ", expected " +
                               std::to_string(lr[i]));
      }
    }
  }
  r.ok = r.mismatches.empty();
  return r;
}

}  // namespace twinsym
