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

#include <cmath>
#include <map>

#include "ontic/error.hpp"
#include "ontic/program.hpp"
#include "support.hpp"

using namespace ontic;
using ontic::testing::circuit_path;

namespace {

std::map<std::string, double> exact_law(const Program& p) {
  std::map<std::string, double> law;
  for (const auto& h : enumerate_histories(p)) law[history_key(p, h.events)] += h.probability;
  return law;
}

double total_variation(const std::map<std::string, double>& law,
                       const std::vector<Trajectory>& runs, const Program& p) {
  std::map<std::string, double> freq;
  for (const auto& t : runs) {
    std::vector<Assignment> events;
    for (const auto& s : t.steps) events.push_back(s.events);
    freq[history_key(p, events)] += 1.0 / static_cast<double>(runs.size());
  }
  double tv = 0.0;
  for (const auto& [k, v] : law) tv += std::abs(v - (freq.count(k) ? freq.at(k) : 0.0));
  for (const auto& [k, v] : freq) {
    if (!law.count(k)) tv += v;
  }
  return tv / 2.0;
}

Program single(const std::string& dsl_text, StateVector initial) {
  std::vector<WiredCircuit> steps;
  steps.emplace_back(circuit_from_dsl(dsl_text));
  return make_program("t", std::move(steps), std::move(initial));
}

}  // namespace

TEST(ApplyOnEdges, MatchesDenseKronecker) {
  std::mt19937_64 rng(51);
  const Circuit c = circuit_from_dsl(
      "sys A : q2\nsys B : q3\nsys C : q2\n"
      "node U : B -> B = kraus([[0,1,0],[0,0,1],[1,0,0]])\n"
      "node P : A -> A = kraus(I)\nnode Q : C -> C = kraus(I)\n");
  const WiredCircuit w(c);
  const StateVector psi = random_state(rng, 12);
  const LayoutState in{psi, w.boundary_inputs()};
  const std::size_t u = *c.node_index("U");
  const ComplexMatrix op = c.nodes[u].events[0].kraus[0];
  const LayoutState out = apply_node(w, in, u, op);
  // Inputs are laid out by node order: B (of U), then A, then C.
  ASSERT_EQ(w.edge(in.edges[0]).system, "B");
  const ComplexMatrix id4 = ComplexMatrix::Identity(4, 4);
  const StateVector expected = ontic::testing::kron_oracle(op, id4) * psi;
  // The output edge of U has the largest id, so B moves last.
  ASSERT_EQ(out.edges.size(), 3u);
  ASSERT_EQ(w.edge(out.edges[2]).system, "B");
  const std::vector<std::size_t> order{1, 2, 0};
  const StateVector aligned = permute_factors(expected, SystemShape{{3, 2, 2}}, order);
  EXPECT_LT((aligned - out.amplitudes).norm(), 1e-14);
}

TEST(Sampler, BellPairFrequencies) {
  const Program p = load_program(circuit_path("bell_pair.ocirc"));
  const auto runs = run_trajectories(p, 7, 4000);
  std::size_t same = 0;
  for (const auto& t : runs) {
    const auto& o = t.steps[0].outcomes.back();
    EXPECT_TRUE(o == "00" || o == "11") << o;
    if (o == "00") ++same;
  }
  EXPECT_NEAR(static_cast<double>(same) / 4000.0, 0.5, 3.0 * std::sqrt(0.25 / 4000.0));
}

TEST(Sampler, MatchesEnumerationOnNineNodeProgram) {
  const Program p = load_program(circuit_path("nine_node_program.json"));
  const auto law = exact_law(p);
  double total = 0.0;
  for (const auto& [k, v] : law) total += v;
  EXPECT_NEAR(total, 1.0, 1e-9);
  EngineOptions opt;
  opt.store_states = false;
  const auto runs = run_trajectories(p, 42, 20000, opt);
  EXPECT_LT(total_variation(law, runs, p), 0.03);
}

TEST(Sampler, TrajectoryProbabilityEqualsHistoryProbability) {
  const Program p = load_program(circuit_path("nine_node_program.json"));
  const auto law = exact_law(p);
  for (std::uint64_t i = 0; i < 20; ++i) {
    const Trajectory t = run_trajectory(p, 3, i);
    std::vector<Assignment> events;
    for (const auto& s : t.steps) events.push_back(s.events);
    EXPECT_NEAR(t.probability, law.at(history_key(p, events)), 1e-12);
    const StateVector omega = compile_program_history(p, events).op * p.initial_state;
    EXPECT_NEAR(omega.squaredNorm(), t.probability, 1e-12);
    EXPECT_LT((canonical_phase(omega.normalized()) - canonical_phase(t.final_state)).norm(),
              1e-10);
  }
}

TEST(Sampler, DeterministicReplay) {
  const Program p = load_program(circuit_path("nine_node_program.json"));
  const auto a = run_trajectories(p, 99, 200, {}, 1);
  const auto b = run_trajectories(p, 99, 200, {}, 4);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(trajectory_record(a[i], true).dump(), trajectory_record(b[i], true).dump());
  }
  const auto c = run_trajectories(p, 100, 200, {}, 1);
  std::size_t differ = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].steps[0].events != c[i].steps[0].events) ++differ;
  }
  EXPECT_GT(differ, 0u);
}

TEST(Sampler, StatesStayNormalized) {
  const Program p = load_program(circuit_path("qualia_bloch.json"));
  EXPECT_EQ(p.steps.size(), 8u);
  const Trajectory t = run_trajectory(p, 1, 0);
  for (const auto& s : t.steps) {
    ASSERT_TRUE(s.state);
    EXPECT_NEAR(s.state->norm(), 1.0, 1e-12);
    EXPECT_NEAR(s.weight, 1.0, 1e-12);
  }
}

TEST(Sampler, StoredOperatorsReproduceStates) {
  const Program p = load_program(circuit_path("merge_split.json"));
  EngineOptions opt;
  opt.store_operators = true;
  const Trajectory t = run_trajectory(p, 5, 0, opt);
  StateVector omega = p.initial_state;
  for (const auto& s : t.steps) {
    ASSERT_TRUE(s.op);
    omega = (*s.op * omega).normalized();
    EXPECT_LT((canonical_phase(omega) - canonical_phase(*s.state)).norm(), 1e-12);
  }
}

TEST(Sampler, RejectsNonAtomicEvents) {
  StateVector zero = StateVector::Zero(2);
  zero(0) = 1.0;
  const Program p = single("sys A : q2\nnode W : A -> A\nevent W mix = kraus(P0, P1)\n", zero);
  EXPECT_THROW(run_trajectory(p, 1, 0), DomainError);
}

TEST(Sampler, DetectsInconsistentTrace) {
  StateVector zero = StateVector::Zero(2);
  zero(0) = 1.0;
  const Program p = single("sys A : q2\nnode W : A -> A = kraus(P1)\n", zero);
  EXPECT_THROW(run_trajectory(p, 1, 0), DomainError);
}

TEST(Sampler, DimensionCap) {
  const Program p = load_program(circuit_path("nine_node_program.json"));
  EngineOptions opt;
  opt.max_dim = 4;
  EXPECT_THROW(run_trajectory(p, 1, 0, opt), DimensionError);
}

TEST(Program, InitialStateChecks) {
  std::vector<WiredCircuit> steps;
  steps.emplace_back(circuit_from_dsl("sys A : q2\nnode W : A -> A = kraus(H)\n"));
  EXPECT_THROW(make_program("t", steps, StateVector::Ones(2)), DomainError);
  EXPECT_THROW(make_program("t", steps, StateVector::Ones(3) / std::sqrt(3.0)),
               DimensionError);
}

TEST(Program, LinksPermuteFactors) {
  // Step one prepares |0>|1>; the link swaps the wires before a CNOT.
  const Json doc = Json::parse(R"({
    "name": "swap",
    "steps": [
      {"name": "prep", "closed": false,
       "systems": [{"label": "A", "dim": 2, "theory": "quantum"},
                   {"label": "B", "dim": 2, "theory": "quantum"}],
       "nodes": [
         {"label": "pa", "inputs": [], "outputs": ["A"],
          "events": [{"outcome": "0", "kraus": [[[1], [0]]]}]},
         {"label": "pb", "inputs": [], "outputs": ["B"],
          "events": [{"outcome": "0", "kraus": [[[0], [1]]]}]}],
       "wires": []},
      {"name": "cx", "closed": false,
       "systems": [{"label": "A", "dim": 2, "theory": "quantum"},
                   {"label": "B", "dim": 2, "theory": "quantum"}],
       "nodes": [
         {"label": "U", "inputs": ["A", "B"], "outputs": ["A", "B"],
          "events": [{"outcome": "0",
                      "kraus": [[[1,0,0,0],[0,1,0,0],[0,0,0,1],[0,0,1,0]]]}]}],
       "wires": []}
    ],
    "links": [[1, 0]]
  })");
  const Program p = program_from_json(doc);
  const Trajectory t = run_trajectory(p, 1, 0);
  // After the swap the control is |1>, so the target flips: |1>|1>.
  EXPECT_NEAR(std::abs(t.final_state(3)), 1.0, 1e-12);
  const auto h = compile_program_history(p, {t.steps[0].events, t.steps[1].events});
  EXPECT_NEAR(std::abs((h.op * p.initial_state)(3)), 1.0, 1e-12);
}

TEST(Program, BadLinksAreRejected) {
  const std::string step = R"({"name": "s", "closed": false,
       "systems": [{"label": "A", "dim": 2, "theory": "quantum"}],
       "nodes": [{"label": "U", "inputs": ["A"], "outputs": ["A"],
                  "events": [{"outcome": "0", "kraus": [[[0,1],[1,0]]]}]}],
       "wires": []})";
  const Json doc = Json::parse("{\"steps\": [" + step + "," + step + "], \"links\": [[1]]}");
  EXPECT_THROW(program_from_json(doc), DimensionError);
}

TEST(Enumerate, NormalizationOfShippedExamples) {
  for (const char* name : {"nine_node_program.json", "merge_split.json", "bell_pair.ocirc",
                           "qualia_bloch.json", "nine_node.ocirc"}) {
    const Program p = load_program(circuit_path(name));
    double total = 0.0;
    for (const auto& h : enumerate_histories(p)) total += h.probability;
    EXPECT_NEAR(total, 1.0, 1e-9) << name;
  }
}

TEST(Enumerate, CapExceeded) {
  const Program p = load_program(circuit_path("nine_node_program.json"));
  EXPECT_THROW(enumerate_histories(p, 8), CapExceeded);
}

TEST(Records, JsonLayout) {
  const Program p = load_program(circuit_path("merge_split.json"));
  const Trajectory t = run_trajectory(p, 11, 2);
  const Json rec = trajectory_record(t, false);
  EXPECT_EQ(rec.at("seed"), 11);
  EXPECT_EQ(rec.at("trajectory"), 2);
  EXPECT_EQ(rec.at("outcomes").size(), 3u);
  EXPECT_FALSE(rec.contains("final_state"));
  EXPECT_TRUE(trajectory_record(t, true).contains("final_state"));
}
