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

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ontic/json_codec.hpp"
#include "ontic/tensor.hpp"

namespace ontic {

enum class Theory { kQuantum, kClassical, kTrivial };

std::string_view to_string(Theory theory);
Theory theory_from_string(std::string_view name);

struct System {
  std::string label;
  std::size_t dim = 1;
  Theory theory = Theory::kQuantum;
};

/// One outcome of a test. A single Kraus operator makes the event atomic.
struct Event {
  std::string outcome;
  std::vector<ComplexMatrix> kraus;
};

/// Condition sources naming this label read the step's classical input.
inline constexpr std::string_view kInputSource = "$input";

/// Selects which events of a test are available, keyed by the outcome label
/// of the source node (or by the classical input).
struct Condition {
  std::string source;
  std::map<std::string, std::vector<std::size_t>> map;
};

/// A test: the complete set of events sharing one input/output signature.
/// States have no inputs, effects no outputs.
struct Node {
  std::string label;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::vector<Event> events;
  std::optional<Condition> condition;
};

struct PortRef {
  std::string node;
  std::size_t port = 0;
};

struct Wire {
  PortRef from;
  PortRef to;
};

struct Circuit {
  std::string name;
  std::vector<System> systems;
  std::vector<Node> nodes;
  std::vector<Wire> wires;
  bool closed = false;

  const System* find_system(std::string_view label) const;
  std::optional<std::size_t> node_index(std::string_view label) const;
  /// Dimension of a declared system. Throws CircuitError for unknown labels.
  std::size_t dim_of(std::string_view system) const;
  std::size_t input_dim(const Node& node) const;
  std::size_t output_dim(const Node& node) const;
};

// --- documents -------------------------------------------------------------

/// Reads the JSON schema without structural validation.
Circuit circuit_from_json(const Json& doc);
Json circuit_to_json(const Circuit& circuit);

/// Reads the line-oriented DSL without structural validation.
Circuit circuit_from_dsl(std::string_view text);

/// Reads either format: documents whose first significant character is '{'
/// are JSON, anything else is DSL. No structural validation.
Circuit decode_circuit(std::string_view text);

/// decode_circuit followed by validate_dag; throws CircuitError carrying the
/// first violation.
Circuit parse_circuit(std::string_view text);

/// Canonical JSON text (two-space indent, trailing newline).
std::string serialize_circuit(const Circuit& circuit);

/// Reads a file. Throws std::ios_base::failure when unreadable.
std::string read_text_file(const std::string& path);
Circuit load_circuit(const std::string& path);

// --- validation ------------------------------------------------------------

enum class ViolationKind {
  kDuplicateLabel,
  kUnknownSystem,
  kUnknownNode,
  kBadPort,
  kPortReuse,
  kDimensionMismatch,
  kTypeMismatch,
  kTrivialSystem,
  kEmptyTest,
  kKrausShape,
  kNotTraceNonincreasing,
  kCondition,
  kCycle,
  kDangling,
};

std::string_view to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  std::size_t node_count = 0;
  /// Node indices; empty when the circuit has a cycle.
  std::vector<std::size_t> topological_order;
  /// No dangling ports.
  bool closed = false;

  bool ok() const { return violations.empty(); }
  bool has(ViolationKind kind) const;
  std::string summary() const;
};

ValidationReport validate_dag(const Circuit& circuit,
                              double tolerance = tol::kTest);

/// Groups node indices by undirected wire and conditioning connectivity.
/// Components are ordered by their smallest node index.
std::vector<std::vector<std::size_t>> connected_components(
    const Circuit& circuit);

/// Attaches |0> preparations to every dangling input and computational-basis
/// effect tests to every dangling output, and marks the result closed.
Circuit close_circuit(const Circuit& circuit);

}  // namespace ontic
