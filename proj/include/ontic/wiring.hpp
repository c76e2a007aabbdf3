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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ontic/circuit.hpp"

namespace ontic {

struct Endpoint {
  std::size_t node;
  std::size_t port;
};

/// A wire of the validated graph. Dangling ports get boundary edges with a
/// missing producer (circuit input) or consumer (circuit output).
struct Edge {
  std::size_t id;
  std::string system;
  std::size_t dim;
  std::optional<Endpoint> producer;
  std::optional<Endpoint> consumer;
};

/// Event index chosen at every node, indexed like Circuit::nodes.
using Assignment = std::vector<std::size_t>;

/// Immutable, validated view of a circuit as a graph of edges.
///
/// Edge ids fix the wire layout used by every compiled operator and state:
/// boundary inputs first (ordered by node, then port), then internal wires in
/// document order, then boundary outputs (ordered by node, then port). A
/// collection of live edges is always laid out in ascending id order.
class WiredCircuit {
 public:
  /// Throws CircuitError when validate_dag reports violations.
  explicit WiredCircuit(Circuit circuit);

  const Circuit& circuit() const { return circuit_; }
  std::size_t node_count() const { return circuit_.nodes.size(); }
  const Node& node(std::size_t i) const { return circuit_.nodes[i]; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(std::size_t id) const { return edges_[id]; }

  const std::vector<std::size_t>& input_edges(std::size_t node) const {
    return inputs_[node];
  }
  const std::vector<std::size_t>& output_edges(std::size_t node) const {
    return outputs_[node];
  }
  const std::vector<std::size_t>& boundary_inputs() const {
    return boundary_inputs_;
  }
  const std::vector<std::size_t>& boundary_outputs() const {
    return boundary_outputs_;
  }
  /// Topological order over wires and conditioning links, ties broken by
  /// document order.
  const std::vector<std::size_t>& topological_order() const { return order_; }

  /// Nodes that must not come later: wire producers and the condition source.
  const std::vector<std::size_t>& predecessors(std::size_t node) const {
    return predecessors_[node];
  }
  /// Node index of the condition source, if it is a node.
  std::optional<std::size_t> condition_source(std::size_t node) const {
    return condition_source_[node];
  }

  /// Events selectable at `node` given the events already fixed upstream and
  /// the step's classical input.
  std::vector<std::size_t> allowed_events(std::size_t node,
                                          const Assignment& assignment,
                                          const std::string& input) const;

  /// Product of edge dimensions.
  std::size_t dim_of(std::span<const std::size_t> edge_ids) const;
  SystemShape shape_of(std::span<const std::size_t> edge_ids) const;
  std::size_t input_dim() const { return dim_of(boundary_inputs_); }
  std::size_t output_dim() const { return dim_of(boundary_outputs_); }

  /// Whether every selectable event subset sums to a trace-preserving map.
  bool deterministic_coarse_graining(double tolerance = tol::kTest) const;

  /// All assignments consistent with conditioning for the given input, in
  /// lexicographic order along the topological order. Throws CapExceeded
  /// beyond `cap`.
  std::vector<Assignment> enumerate_assignments(const std::string& input,
                                                std::size_t cap) const;

  /// Outcome labels of an assignment, listed in topological order.
  std::vector<std::string> outcome_labels(const Assignment& assignment) const;

 private:
  Circuit circuit_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> inputs_;
  std::vector<std::vector<std::size_t>> outputs_;
  std::vector<std::size_t> boundary_inputs_;
  std::vector<std::size_t> boundary_outputs_;
  std::vector<std::size_t> order_;
  std::vector<std::vector<std::size_t>> predecessors_;
  std::vector<std::optional<std::size_t>> condition_source_;
};

}  // namespace ontic
