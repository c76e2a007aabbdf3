// Copyright 2026 The Ontic Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ontic/circuit.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "ontic/error.hpp"

namespace ontic {

std::string_view to_string(Theory theory) {
  switch (theory) {
    case Theory::kQuantum:
      return "quantum";
    case Theory::kClassical:
      return "classical";
    case Theory::kTrivial:
      return "trivial";
  }
  return "quantum";
}

Theory theory_from_string(std::string_view name) {
  if (name == "quantum") return Theory::kQuantum;
  if (name == "classical") return Theory::kClassical;
  if (name == "trivial") return Theory::kTrivial;
  throw FormatError(fmt::format("unknown theory '{}'", name));
}

const System* Circuit::find_system(std::string_view label) const {
  for (const auto& s : systems) {
    if (s.label == label) return &s;
  }
  return nullptr;
}

std::optional<std::size_t> Circuit::node_index(std::string_view label) const {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].label == label) return i;
  }
  return std::nullopt;
}

std::size_t Circuit::dim_of(std::string_view system) const {
  const System* s = find_system(system);
  if (s == nullptr) {
    throw CircuitError(fmt::format("unknown system '{}'", system));
  }
  return s->dim;
}

std::size_t Circuit::input_dim(const Node& node) const {
  std::size_t d = 1;
  for (const auto& s : node.inputs) d *= dim_of(s);
  return d;
}

std::size_t Circuit::output_dim(const Node& node) const {
  std::size_t d = 1;
  for (const auto& s : node.outputs) d *= dim_of(s);
  return d;
}

// --- JSON ------------------------------------------------------------------

namespace {

const Json& require(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw FormatError(fmt::format("{}: missing key '{}'", where, key));
  }
  return obj.at(key);
}

std::string outcome_label(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw FormatError("event outcome must be a string or an integer");
}

std::vector<std::string> string_list(const Json& j, const std::string& where) {
  if (!j.is_array()) throw FormatError(where + ": expected an array");
  std::vector<std::string> out;
  for (const auto& item : j) {
    if (!item.is_string()) throw FormatError(where + ": expected labels");
    out.push_back(item.get<std::string>());
  }
  return out;
}

PortRef port_ref(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_string() ||
      !j[1].is_number_unsigned()) {
    throw FormatError(where + ": expected [node, port]");
  }
  return {j[0].get<std::string>(), j[1].get<std::size_t>()};
}

std::pair<std::size_t, std::size_t> line_col(std::string_view text,
                                             std::size_t offset) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < std::min(offset, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace

Circuit circuit_from_json(const Json& doc) {
  if (!doc.is_object()) throw FormatError("circuit document must be an object");
  Circuit c;
  c.name = require(doc, "name", "circuit").get<std::string>();
  for (const auto& s : require(doc, "systems", "circuit")) {
    System sys;
    sys.label = require(s, "label", "system").get<std::string>();
    const auto& dim = require(s, "dim", "system " + sys.label);
    if (!dim.is_number_unsigned() || dim.get<std::size_t>() == 0) {
      throw FormatError("system " + sys.label + ": dim must be positive");
    }
    sys.dim = dim.get<std::size_t>();
    sys.theory = theory_from_string(
        require(s, "theory", "system " + sys.label).get<std::string>());
    c.systems.push_back(std::move(sys));
  }
  for (const auto& n : require(doc, "nodes", "circuit")) {
    Node node;
    node.label = require(n, "label", "node").get<std::string>();
    const std::string where = "node " + node.label;
    node.inputs = string_list(require(n, "inputs", where), where);
    node.outputs = string_list(require(n, "outputs", where), where);
    for (const auto& e : require(n, "events", where)) {
      Event ev;
      ev.outcome = outcome_label(require(e, "outcome", where));
      for (const auto& m : require(e, "kraus", where)) {
        ev.kraus.push_back(matrix_from_json(m));
      }
      node.events.push_back(std::move(ev));
    }
    if (n.contains("condition") && !n.at("condition").is_null()) {
      const auto& cj = n.at("condition");
      Condition cond;
      cond.source = require(cj, "source", where).get<std::string>();
      const auto& map = require(cj, "map", where);
      if (!map.is_object()) throw FormatError(where + ": condition map");
      for (const auto& [key, value] : map.items()) {
        if (!value.is_array()) throw FormatError(where + ": condition map");
        std::vector<std::size_t> indices;
        for (const auto& idx : value) {
          if (!idx.is_number_unsigned()) {
            throw FormatError(where + ": event indices must be unsigned");
          }
          indices.push_back(idx.get<std::size_t>());
        }
        cond.map.emplace(key, std::move(indices));
      }
      node.condition = std::move(cond);
    }
    c.nodes.push_back(std::move(node));
  }
  for (const auto& w : require(doc, "wires", "circuit")) {
    c.wires.push_back({port_ref(require(w, "from", "wire"), "wire.from"),
                       port_ref(require(w, "to", "wire"), "wire.to")});
  }
  const auto& closed = require(doc, "closed", "circuit");
  if (!closed.is_boolean()) throw FormatError("circuit: closed must be bool");
  c.closed = closed.get<bool>();
  return c;
}

Json circuit_to_json(const Circuit& c) {
  Json doc;
  doc["name"] = c.name;
  doc["systems"] = Json::array();
  for (const auto& s : c.systems) {
    doc["systems"].push_back(
        {{"label", s.label}, {"dim", s.dim}, {"theory", to_string(s.theory)}});
  }
  doc["nodes"] = Json::array();
  for (const auto& n : c.nodes) {
    Json node;
    node["label"] = n.label;
    node["inputs"] = n.inputs;
    node["outputs"] = n.outputs;
    node["events"] = Json::array();
    for (const auto& e : n.events) {
      Json kraus = Json::array();
      for (const auto& k : e.kraus) kraus.push_back(matrix_to_json(k));
      node["events"].push_back({{"outcome", e.outcome}, {"kraus", kraus}});
    }
    if (n.condition) {
      Json map = Json::object();
      for (const auto& [key, value] : n.condition->map) map[key] = value;
      node["condition"] = {{"source", n.condition->source}, {"map", map}};
    }
    doc["nodes"].push_back(std::move(node));
  }
  doc["wires"] = Json::array();
  for (const auto& w : c.wires) {
    doc["wires"].push_back({{"from", {w.from.node, w.from.port}},
                            {"to", {w.to.node, w.to.port}}});
  }
  doc["closed"] = c.closed;
  return doc;
}

Circuit decode_circuit(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') {
    Json doc;
    try {
      doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
      const auto [line, col] = line_col(text, e.byte == 0 ? 0 : e.byte - 1);
      throw ParseError("JSON syntax error", line, col);
    }
    try {
      return circuit_from_json(doc);
    } catch (const Json::exception& e) {
      throw FormatError(std::string("circuit document: ") + e.what());
    }
  }
  return circuit_from_dsl(text);
}

Circuit parse_circuit(std::string_view text) {
  Circuit c = decode_circuit(text);
  const auto report = validate_dag(c);
  if (!report.ok()) {
    const auto& v = report.violations.front();
    throw CircuitError(fmt::format("{}: {}", to_string(v.kind), v.message));
  }
  return c;
}

std::string serialize_circuit(const Circuit& circuit) {
  return circuit_to_json(circuit).dump(2) + "\n";
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::ios_base::failure("cannot open '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Circuit load_circuit(const std::string& path) {
  return parse_circuit(read_text_file(path));
}

// --- validation ------------------------------------------------------------

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kDuplicateLabel:
      return "duplicate label";
    case ViolationKind::kUnknownSystem:
      return "unknown system";
    case ViolationKind::kUnknownNode:
      return "unknown node";
    case ViolationKind::kBadPort:
      return "bad port";
    case ViolationKind::kPortReuse:
      return "port reuse";
    case ViolationKind::kDimensionMismatch:
      return "dimension mismatch";
    case ViolationKind::kTypeMismatch:
      return "type mismatch";
    case ViolationKind::kTrivialSystem:
      return "trivial system";
    case ViolationKind::kEmptyTest:
      return "empty test";
    case ViolationKind::kKrausShape:
      return "kraus shape";
    case ViolationKind::kNotTraceNonincreasing:
      return "not trace-nonincreasing";
    case ViolationKind::kCondition:
      return "condition";
    case ViolationKind::kCycle:
      return "cycle";
    case ViolationKind::kDangling:
      return "dangling port";
  }
  return "violation";
}

bool ValidationReport::has(ViolationKind kind) const {
  return std::any_of(violations.begin(), violations.end(),
                     [kind](const Violation& v) { return v.kind == kind; });
}

std::string ValidationReport::summary() const {
  std::string out;
  if (ok()) {
    out = fmt::format("OK: {} nodes, {}\n", node_count,
                      closed ? "closed" : "open");
  }
  for (const auto& v : violations) {
    out += fmt::format("{}: {}\n", to_string(v.kind), v.message);
  }
  return out;
}

namespace {

class Validator {
 public:
  Validator(const Circuit& c, double tolerance) : c_(c), tolerance_(tolerance) {}

  ValidationReport run() {
    report_.node_count = c_.nodes.size();
    check_systems();
    check_nodes();
    check_wires();
    check_order();
    check_closure();
    return std::move(report_);
  }

 private:
  void add(ViolationKind kind, std::string message) {
    report_.violations.push_back({kind, std::move(message)});
  }

  void check_systems() {
    std::set<std::string> seen;
    for (const auto& s : c_.systems) {
      if (!seen.insert(s.label).second) {
        add(ViolationKind::kDuplicateLabel, "system " + s.label);
      }
      if (s.theory == Theory::kTrivial && s.dim != 1) {
        add(ViolationKind::kTrivialSystem,
            fmt::format("system {} is trivial but has dim {}", s.label, s.dim));
      }
    }
  }

  bool systems_known(const Node& n) {
    bool ok = true;
    for (const auto* list : {&n.inputs, &n.outputs}) {
      for (const auto& s : *list) {
        if (c_.find_system(s) == nullptr) {
          add(ViolationKind::kUnknownSystem,
              fmt::format("node {} references system {}", n.label, s));
          ok = false;
        }
      }
    }
    return ok;
  }

  void check_subset(const Node& n, const std::vector<std::size_t>& subset,
                    std::size_t in_dim, const std::string& what) {
    ComplexMatrix sum = ComplexMatrix::Zero(in_dim, in_dim);
    for (std::size_t e : subset) {
      for (const auto& k : n.events[e].kraus) sum += k.adjoint() * k;
    }
    const double top = hermitian_eigenvalues(sum).maxCoeff();
    if (top > 1.0 + tolerance_) {
      add(ViolationKind::kNotTraceNonincreasing,
          fmt::format("node {}{}: largest eigenvalue of sum K^dag K is {:.12g}",
                      n.label, what, top));
    }
  }

  void check_nodes() {
    std::set<std::string> seen;
    for (const auto& n : c_.nodes) {
      if (!seen.insert(n.label).second) {
        add(ViolationKind::kDuplicateLabel, "node " + n.label);
      }
      if (n.events.empty()) {
        add(ViolationKind::kEmptyTest, "node " + n.label + " has no events");
      }
      std::set<std::string> outcomes;
      for (const auto& e : n.events) {
        if (!outcomes.insert(e.outcome).second) {
          add(ViolationKind::kDuplicateLabel,
              fmt::format("node {} repeats outcome {}", n.label, e.outcome));
        }
      }
      if (!systems_known(n)) continue;
      const std::size_t in_dim = c_.input_dim(n);
      const std::size_t out_dim = c_.output_dim(n);
      bool shapes_ok = true;
      for (const auto& e : n.events) {
        if (e.kraus.empty()) {
          add(ViolationKind::kKrausShape,
              fmt::format("node {} outcome {} has no Kraus operators", n.label,
                          e.outcome));
          shapes_ok = false;
        }
        for (const auto& k : e.kraus) {
          if (static_cast<std::size_t>(k.rows()) != out_dim ||
              static_cast<std::size_t>(k.cols()) != in_dim) {
            add(ViolationKind::kKrausShape,
                fmt::format("node {} outcome {}: operator is {}x{}, signature "
                            "needs {}x{}",
                            n.label, e.outcome, k.rows(), k.cols(), out_dim,
                            in_dim));
            shapes_ok = false;
          }
        }
      }
      const bool condition_ok = check_condition(n);
      if (!shapes_ok || n.events.empty()) continue;
      if (n.condition && condition_ok) {
        for (const auto& [key, subset] : n.condition->map) {
          check_subset(n, subset, in_dim, " (condition " + key + ")");
        }
      } else if (!n.condition) {
        std::vector<std::size_t> all(n.events.size());
        std::iota(all.begin(), all.end(), std::size_t{0});
        check_subset(n, all, in_dim, "");
      }
    }
  }

  bool check_condition(const Node& n) {
    if (!n.condition) return true;
    const auto& cond = *n.condition;
    bool ok = true;
    for (const auto& [key, subset] : cond.map) {
      if (subset.empty()) {
        add(ViolationKind::kCondition,
            fmt::format("node {}: condition value {} selects no events",
                        n.label, key));
        ok = false;
      }
      for (std::size_t e : subset) {
        if (e >= n.events.size()) {
          add(ViolationKind::kCondition,
              fmt::format("node {}: event index {} out of range", n.label, e));
          ok = false;
        }
      }
    }
    if (cond.source == kInputSource) return ok;
    const auto src = c_.node_index(cond.source);
    if (!src) {
      add(ViolationKind::kCondition,
          fmt::format("node {} is conditioned on unknown node {}", n.label,
                      cond.source));
      return false;
    }
    if (c_.nodes[*src].label == n.label) {
      add(ViolationKind::kCycle,
          fmt::format("node {} is conditioned on itself", n.label));
      return false;
    }
    for (const auto& e : c_.nodes[*src].events) {
      if (!cond.map.contains(e.outcome)) {
        add(ViolationKind::kCondition,
            fmt::format("node {}: outcome {} of {} is not mapped", n.label,
                        e.outcome, cond.source));
        ok = false;
      }
    }
    for (const auto& [key, subset] : cond.map) {
      const auto& evs = c_.nodes[*src].events;
      if (std::none_of(evs.begin(), evs.end(),
                       [&](const Event& e) { return e.outcome == key; })) {
        add(ViolationKind::kCondition,
            fmt::format("node {}: {} has no outcome {}", n.label, cond.source,
                        key));
        ok = false;
      }
    }
    return ok;
  }

  void check_wires() {
    const std::size_t n = c_.nodes.size();
    out_used_.assign(n, {});
    in_used_.assign(n, {});
    for (std::size_t i = 0; i < n; ++i) {
      out_used_[i].assign(c_.nodes[i].outputs.size(), false);
      in_used_[i].assign(c_.nodes[i].inputs.size(), false);
    }
    for (const auto& w : c_.wires) {
      const auto from = c_.node_index(w.from.node);
      const auto to = c_.node_index(w.to.node);
      const std::string desc = fmt::format("{}.{} -> {}.{}", w.from.node,
                                           w.from.port, w.to.node, w.to.port);
      if (!from || !to) {
        add(ViolationKind::kUnknownNode, "wire " + desc);
        continue;
      }
      const Node& producer = c_.nodes[*from];
      const Node& consumer = c_.nodes[*to];
      if (w.from.port >= producer.outputs.size() ||
          w.to.port >= consumer.inputs.size()) {
        add(ViolationKind::kBadPort, "wire " + desc);
        continue;
      }
      if (out_used_[*from][w.from.port] || in_used_[*to][w.to.port]) {
        add(ViolationKind::kPortReuse, "wire " + desc);
        continue;
      }
      out_used_[*from][w.from.port] = true;
      in_used_[*to][w.to.port] = true;
      const System* a = c_.find_system(producer.outputs[w.from.port]);
      const System* b = c_.find_system(consumer.inputs[w.to.port]);
      if (a != nullptr && b != nullptr) {
        if (a->dim != b->dim) {
          add(ViolationKind::kDimensionMismatch,
              fmt::format("wire {} joins {} (dim {}) to {} (dim {})", desc,
                          a->label, a->dim, b->label, b->dim));
        } else if (a->label != b->label) {
          add(ViolationKind::kTypeMismatch,
              fmt::format("wire {} joins system {} to {}", desc, a->label,
                          b->label));
        }
      }
      edges_.emplace_back(*from, *to);
    }
  }

  void check_order() {
    const std::size_t n = c_.nodes.size();
    for (std::size_t i = 0; i < n; ++i) {
      const auto& cond = c_.nodes[i].condition;
      if (!cond || cond->source == kInputSource) continue;
      if (const auto src = c_.node_index(cond->source); src && *src != i) {
        edges_.emplace_back(*src, i);
      }
    }
    std::vector<std::vector<std::size_t>> succ(n);
    std::vector<std::size_t> indegree(n, 0);
    for (const auto& [a, b] : edges_) {
      succ[a].push_back(b);
      ++indegree[b];
    }
    std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>>
        ready;
    for (std::size_t i = 0; i < n; ++i) {
      if (indegree[i] == 0) ready.push(i);
    }
    std::vector<std::size_t> order;
    while (!ready.empty()) {
      const std::size_t v = ready.top();
      ready.pop();
      order.push_back(v);
      for (std::size_t s : succ[v]) {
        if (--indegree[s] == 0) ready.push(s);
      }
    }
    if (order.size() != n) {
      std::string members;
      for (std::size_t i = 0; i < n; ++i) {
        if (indegree[i] > 0) members += " " + c_.nodes[i].label;
      }
      add(ViolationKind::kCycle, "nodes on or behind a cycle:" + members);
      return;
    }
    report_.topological_order = std::move(order);
  }

  void check_closure() {
    bool closed = true;
    std::string dangling;
    for (std::size_t i = 0; i < c_.nodes.size(); ++i) {
      for (std::size_t p = 0; p < in_used_[i].size(); ++p) {
        if (!in_used_[i][p]) {
          closed = false;
          dangling += fmt::format(" {}.in{}", c_.nodes[i].label, p);
        }
      }
      for (std::size_t p = 0; p < out_used_[i].size(); ++p) {
        if (!out_used_[i][p]) {
          closed = false;
          dangling += fmt::format(" {}.out{}", c_.nodes[i].label, p);
        }
      }
    }
    report_.closed = closed;
    if (c_.closed && !closed) {
      add(ViolationKind::kDangling,
          "circuit declared closed has dangling ports:" + dangling);
    }
  }

  const Circuit& c_;
  double tolerance_;
  ValidationReport report_;
  std::vector<std::vector<bool>> out_used_;
  std::vector<std::vector<bool>> in_used_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
};

}  // namespace

ValidationReport validate_dag(const Circuit& circuit, double tolerance) {
  return Validator(circuit, tolerance).run();
}

std::vector<std::vector<std::size_t>> connected_components(
    const Circuit& circuit) {
  const std::size_t n = circuit.nodes.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  auto unite = [&](std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  };
  for (const auto& w : circuit.wires) {
    const auto a = circuit.node_index(w.from.node);
    const auto b = circuit.node_index(w.to.node);
    if (a && b) unite(*a, *b);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto& cond = circuit.nodes[i].condition;
    if (!cond) continue;
    if (const auto src = circuit.node_index(cond->source)) unite(*src, i);
  }
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < n; ++i) groups[find(i)].push_back(i);
  std::vector<std::vector<std::size_t>> out;
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  return out;
}

Circuit close_circuit(const Circuit& circuit) {
  Circuit out = circuit;
  std::set<std::pair<std::string, std::size_t>> wired_in;
  std::set<std::pair<std::string, std::size_t>> wired_out;
  for (const auto& w : circuit.wires) {
    wired_out.emplace(w.from.node, w.from.port);
    wired_in.emplace(w.to.node, w.to.port);
  }
  for (const auto& n : circuit.nodes) {
    for (std::size_t p = 0; p < n.inputs.size(); ++p) {
      if (wired_in.contains({n.label, p})) continue;
      const std::size_t d = circuit.dim_of(n.inputs[p]);
      Node prep{fmt::format("init:{}.{}", n.label, p), {}, {n.inputs[p]}, {}, {}};
      ComplexMatrix ket = ComplexMatrix::Zero(d, 1);
      ket(0, 0) = 1.0;
      prep.events.push_back({"0", {ket}});
      out.wires.push_back({{prep.label, 0}, {n.label, p}});
      out.nodes.push_back(std::move(prep));
    }
    for (std::size_t p = 0; p < n.outputs.size(); ++p) {
      if (wired_out.contains({n.label, p})) continue;
      const std::size_t d = circuit.dim_of(n.outputs[p]);
      Node effect{fmt::format("read:{}.{}", n.label, p), {n.outputs[p]}, {}, {}, {}};
      for (std::size_t k = 0; k < d; ++k) {
        ComplexMatrix bra = ComplexMatrix::Zero(1, d);
        bra(0, k) = 1.0;
        effect.events.push_back({std::to_string(k), {bra}});
      }
      out.wires.push_back({{n.label, p}, {effect.label, 0}});
      out.nodes.push_back(std::move(effect));
    }
  }
  out.closed = true;
  return out;
}

}  // namespace ontic
