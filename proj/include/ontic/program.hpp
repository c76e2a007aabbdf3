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

#pragma once

// Ontic evolution: a program is a sequence of step circuits acting on a pure
// state. Each step samples one outcome per test (the step's free-will record)
// and applies the chosen atomic events.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ontic/foliation.hpp"
#include "ontic/json_codec.hpp"
#include "ontic/wiring.hpp"

namespace ontic {

struct Program {
  std::string name;
  std::vector<WiredCircuit> steps;
  /// links[t][i] is the output of step t (in layout order) feeding input i of
  /// step t + 1.
  std::vector<std::vector<std::size_t>> links;
  StateVector initial_state;
  /// Classical input x_t of each step.
  std::vector<std::string> inputs;
};

/// Classical input of steps that were given none.
inline constexpr const char* kDefaultInput = "0";

/// Checks dimensions and normalization; fills identity links and the default
/// input when omitted. Throws DimensionError or DomainError.
Program make_program(std::string name, std::vector<WiredCircuit> steps,
                     StateVector initial_state,
                     std::vector<std::string> inputs = {},
                     std::vector<std::vector<std::size_t>> links = {});

/// Program document:
///   {"name", "steps": [circuit | "path"], "repeat"?, "links"?,
///    "initial_state"? | "initial_factors"?, "inputs"?}
/// Paths are resolved against base_dir. A bare circuit document becomes a
/// one-step program starting from |0...0>.
Program program_from_json(const Json& doc, const std::string& base_dir = ".");
Program load_program(const std::string& path);

/// State vector laid out over live edges in ascending id order.
struct LayoutState {
  StateVector amplitudes;
  std::vector<std::size_t> edges;
};

/// Applies `op` (maps in_edges to out_edges, ports in the given order) to the
/// factors of `state`, leaving the others untouched.
LayoutState apply_on_edges(const WiredCircuit& circuit, const LayoutState& state,
                           const std::vector<std::size_t>& in_edges,
                           const std::vector<std::size_t>& out_edges,
                           const ComplexMatrix& op);

/// apply_on_edges with the node's own signature.
LayoutState apply_node(const WiredCircuit& circuit, const LayoutState& state,
                       std::size_t node, const ComplexMatrix& op);

struct EngineOptions {
  std::size_t max_dim = kDefaultMaxDim;
  /// Allowed gap between the sampled outcome weights and the coarse-grained
  /// trace of each test.
  double tolerance = tol::kNum;
  bool store_states = true;
  /// Step operators are compiled only up to this dimension.
  bool store_operators = false;
  std::size_t operator_cap = 256;
};

/// Branches below this weight are never sampled.
inline constexpr double kZeroWeight = 1e-14;

struct StepSample {
  Assignment events;
  StateVector state;
  double weight = 1.0;
};

/// Samples every test of the step in topological order with probability
/// ||K omega||^2 and returns the normalized post-state. `omega` must be
/// normalized and laid out over the step's inputs.
StepSample sample_step(const WiredCircuit& step, const StateVector& omega,
                       const std::string& input, std::mt19937_64& rng,
                       const EngineOptions& options = {});

struct TrajectoryStep {
  std::string input;
  Assignment events;
  std::vector<std::string> outcomes;
  double weight = 1.0;
  SystemShape shape;
  std::optional<StateVector> state;
  std::optional<ComplexMatrix> op;
};

struct Trajectory {
  std::uint64_t seed = 0;
  std::uint64_t index = 0;
  std::vector<TrajectoryStep> steps;
  double probability = 1.0;
  StateVector final_state;
};

/// One history. Stream (seed, index) makes replays identical.
Trajectory run_trajectory(const Program& program, std::uint64_t seed,
                          std::uint64_t index, const EngineOptions& options = {});

/// Trajectories 0..count-1, in index order regardless of scheduling.
std::vector<Trajectory> run_trajectories(const Program& program,
                                         std::uint64_t seed, std::size_t count,
                                         const EngineOptions& options = {},
                                         std::size_t threads = 0);

/// Step operator of every step multiplied with the inter-step links.
HistoryOperator compile_program_history(const Program& program,
                                        const std::vector<Assignment>& events,
                                        std::size_t max_dim = kDefaultMaxDim);

struct History {
  std::vector<Assignment> events;
  double probability = 0.0;
};

/// Every outcome history with p = ||Omega omega_0||^2, using operators
/// compiled from the asap foliation of each step. Throws CapExceeded when
/// more than `cap` histories exist.
std::vector<History> enumerate_histories(const Program& program,
                                         std::size_t cap = 1 << 20,
                                         std::size_t max_dim = kDefaultMaxDim);

/// "a b c|d e" built from outcome labels in topological order per step.
std::string history_key(const Program& program,
                        const std::vector<Assignment>& events);

/// JSON Lines record: {seed, trajectory, outcomes, probability, final_state?}.
Json trajectory_record(const Trajectory& trajectory, bool include_state);

Json histories_to_json(const Program& program,
                       const std::vector<History>& histories);

}  // namespace ontic
