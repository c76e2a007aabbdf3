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

#include <gtest/gtest.h>

#include <queue>
#include <set>

#include "ontic/circuit.hpp"
#include "ontic/error.hpp"
#include "support.hpp"

using namespace ontic;
using ontic::testing::circuit_path;

namespace {

Circuit dsl(const std::string& text) { return circuit_from_dsl(text); }

const char* kTwoQubits =
    "name t\n"
    "sys A : q2\n"
    "sys B : q2\n";

// Components by breadth-first search over wires and conditioning links.
std::vector<std::vector<std::size_t>> components_bfs(const Circuit& c) {
  const std::size_t n = c.nodes.size();
  std::vector<std::vector<std::size_t>> adj(n);
  auto link = [&](std::size_t a, std::size_t b) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  };
  for (const auto& w : c.wires) link(*c.node_index(w.from.node), *c.node_index(w.to.node));
  for (std::size_t i = 0; i < n; ++i) {
    if (c.nodes[i].condition && c.nodes[i].condition->source != kInputSource) {
      link(i, *c.node_index(c.nodes[i].condition->source));
    }
  }
  std::vector<int> seen(n, 0);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<std::size_t> comp;
    std::queue<std::size_t> q;
    q.push(s);
    seen[s] = 1;
    while (!q.empty()) {
      const std::size_t v = q.front();
      q.pop();
      comp.push_back(v);
      for (std::size_t u : adj[v]) {
        if (!seen[u]) {
          seen[u] = 1;
          q.push(u);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(comp);
  }
  return out;
}

}  // namespace

TEST(Dsl, NineNodeCircuitLoads) {
  const Circuit c = load_circuit(circuit_path("nine_node.ocirc"));
  EXPECT_EQ(c.nodes.size(), 9u);
  EXPECT_EQ(c.systems.size(), 12u);
  EXPECT_EQ(c.wires.size(), 8u);
  const auto report = validate_dag(c);
  EXPECT_TRUE(report.ok()) << report.summary();
  EXPECT_FALSE(report.closed);
  EXPECT_EQ(report.topological_order.size(), 9u);
}

TEST(Dsl, DefaultConditionMaps) {
  const Circuit c = load_circuit(circuit_path("nine_node.ocirc"));
  const Node& psi = c.nodes[*c.node_index("psi")];
  ASSERT_TRUE(psi.condition);
  EXPECT_EQ(psi.condition->source, "alpha");
  EXPECT_EQ(psi.condition->map.at("0"), std::vector<std::size_t>{0});
  EXPECT_EQ(psi.condition->map.at("1"), std::vector<std::size_t>{1});
  const Node& lambda = c.nodes[*c.node_index("Lambda")];
  EXPECT_EQ(lambda.condition->map.at("1"), (std::vector<std::size_t>{4, 5, 6, 7}));
}

TEST(Dsl, ParseErrorCarriesLineAndColumn) {
  try {
    dsl(std::string(kTwoQubits) + "node U : A -> A = kraus(NOPE)\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4u);
    EXPECT_GT(e.column(), 1u);
  }
  EXPECT_THROW(dsl("bogus line\n"), ParseError);
  EXPECT_THROW(dsl("sys A : q0\n"), ParseError);
}

TEST(Json, RoundTripIsByteIdentical) {
  for (const char* name : {"nine_node.ocirc", "bell_pair.ocirc", "merge_split_observe.ocirc"}) {
    const Circuit c = load_circuit(circuit_path(name));
    const std::string once = serialize_circuit(c);
    const std::string twice = serialize_circuit(parse_circuit(once));
    EXPECT_EQ(once, twice) << name;
  }
}

TEST(Json, MalformedDocumentReportsPosition) {
  try {
    decode_circuit("{\n  \"name\": \"x\",\n  \"nodes\": [,]\n}\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(Json, WrongFieldTypesAreRejected) {
  EXPECT_THROW(decode_circuit(R"({"name": "x", "systems": 3, "nodes": [], "wires": []})"),
               Error);
}

TEST(Validate, CycleIsReported) {
  const Circuit c = decode_circuit(read_text_file(circuit_path("cyclic.ocirc")));
  const auto report = validate_dag(c);
  EXPECT_TRUE(report.has(ViolationKind::kCycle));
  EXPECT_NE(report.summary().find("cycle"), std::string::npos);
  EXPECT_TRUE(report.topological_order.empty());
  try {
    parse_circuit(read_text_file(circuit_path("cyclic.ocirc")));
    FAIL() << "expected CircuitError";
  } catch (const CircuitError& e) {
    EXPECT_NE(std::string(e.what()).find("cycle"), std::string::npos);
  }
}

TEST(Validate, DimensionMismatch) {
  const Circuit c = dsl(
      "sys A : q2\nsys B : q3\n"
      "node U : -> A = kraus(ket0)\n"
      "node W : B -> B = kraus([[1,0,0],[0,1,0],[0,0,1]])\n"
      "wire U.0 -> W.0\n");
  EXPECT_TRUE(validate_dag(c).has(ViolationKind::kDimensionMismatch));
}

TEST(Validate, PortReuseAndBadPort) {
  const Circuit reuse = dsl(std::string(kTwoQubits) +
                            "node P : -> A = kraus(ket0)\n"
                            "node Q : -> A = kraus(ket1)\n"
                            "node W : A -> A = kraus(X)\n"
                            "wire P.0 -> W.0\nwire Q.0 -> W.0\n");
  EXPECT_TRUE(validate_dag(reuse).has(ViolationKind::kPortReuse));
  const Circuit bad = dsl(std::string(kTwoQubits) +
                          "node P : -> A = kraus(ket0)\n"
                          "node W : A -> A = kraus(X)\n"
                          "wire P.3 -> W.0\n");
  EXPECT_TRUE(validate_dag(bad).has(ViolationKind::kBadPort));
}

TEST(Validate, UnknownNodeInWire) {
  const Circuit c = dsl(std::string(kTwoQubits) +
                        "node P : -> A = kraus(ket0)\nwire P.0 -> Nowhere.0\n");
  EXPECT_TRUE(validate_dag(c).has(ViolationKind::kUnknownNode));
}

TEST(Validate, TraceIncreasingTestIsRejected) {
  const Circuit c = dsl(std::string(kTwoQubits) +
                        "node W : A -> A = kraus([[2,0],[0,2]])\n");
  EXPECT_TRUE(validate_dag(c).has(ViolationKind::kNotTraceNonincreasing));
  const Circuit two = dsl(std::string(kTwoQubits) +
                          "node W : A -> A\nevent W a = kraus(I)\nevent W b = kraus(X)\n");
  EXPECT_TRUE(validate_dag(two).has(ViolationKind::kNotTraceNonincreasing));
}

TEST(Validate, KrausShapeMustMatchSignature) {
  const Circuit c = dsl(std::string(kTwoQubits) + "node W : A -> A, B = kraus(X)\n");
  EXPECT_TRUE(validate_dag(c).has(ViolationKind::kKrausShape));
}

TEST(Validate, IncompleteConditionMap) {
  const Circuit c = dsl(std::string(kTwoQubits) +
                        "node M : A -> A\nevent M 0 = kraus(P0)\nevent M 1 = kraus(P1)\n"
                        "node W : B -> B\nevent W 0 = kraus(I)\n"
                        "cond W on M {\"0\":[0]}\n");
  EXPECT_TRUE(validate_dag(c).has(ViolationKind::kCondition));
}

TEST(Validate, ClosedDeclarationRequiresNoDanglingPorts) {
  const Circuit c = dsl(std::string(kTwoQubits) + "closed\nnode W : A -> A = kraus(X)\n");
  EXPECT_TRUE(validate_dag(c).has(ViolationKind::kDangling));
  const Circuit open = dsl(std::string(kTwoQubits) + "node W : A -> A = kraus(X)\n");
  const auto report = validate_dag(open);
  EXPECT_TRUE(report.ok());
  EXPECT_FALSE(report.closed);
}

TEST(Validate, ConditioningCanCreateCycles) {
  const Circuit c = dsl(std::string(kTwoQubits) +
                        "node M : A -> A\nevent M 0 = kraus(P0)\nevent M 1 = kraus(P1)\n"
                        "node W : A -> A\nevent W 0 = kraus(P0)\nevent W 1 = kraus(P1)\n"
                        "wire M.0 -> W.0\ncond M on W\n");
  EXPECT_TRUE(validate_dag(c).has(ViolationKind::kCycle));
}

TEST(Components, MatchBreadthFirstSearch) {
  const Circuit c = dsl(std::string(kTwoQubits) +
                        "sys C : q2\n"
                        "node P : -> A = kraus(ket0)\n"
                        "node Q : -> B = kraus(ket0)\n"
                        "node M : A ->\nevent M 0 = kraus(bra0)\nevent M 1 = kraus(bra1)\n"
                        "node R : -> C\nevent R 0 = kraus(ket0)\nevent R 1 = kraus(ket1)\n"
                        "cond R on M\n"
                        "wire P.0 -> M.0\n");
  const auto comps = connected_components(c);
  EXPECT_EQ(comps, components_bfs(c));
  EXPECT_EQ(comps.size(), 2u);

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Circuit r = ontic::testing::random_circuit(rng);
    EXPECT_EQ(connected_components(r), components_bfs(r));
  }
}

TEST(Close, AttachesPreparationsAndReadouts) {
  const Circuit open = load_circuit(circuit_path("nine_node.ocirc"));
  const Circuit closed = close_circuit(open);
  const auto report = validate_dag(closed);
  EXPECT_TRUE(report.ok()) << report.summary();
  EXPECT_TRUE(report.closed);
  EXPECT_EQ(closed.nodes.size(), open.nodes.size() + 4);
}

TEST(RandomCircuits, AreValid) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const Circuit c = ontic::testing::random_circuit(rng);
    const auto report = validate_dag(c);
    EXPECT_TRUE(report.ok()) << report.summary();
    EXPECT_GE(c.nodes.size(), 4u);
    EXPECT_LE(c.nodes.size(), 8u);
  }
}
