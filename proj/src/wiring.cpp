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

#include "ontic/wiring.hpp"

#include <algorithm>
#include <numeric>

#include <fmt/format.h>

#include "ontic/error.hpp"

namespace ontic {

WiredCircuit::WiredCircuit(Circuit circuit) : circuit_(std::move(circuit)) {
  const auto report = validate_dag(circuit_);
  if (!report.ok()) {
    const auto& v = report.violations.front();
    throw CircuitError(fmt::format("{}: {}", to_string(v.kind), v.message));
  }
  order_ = report.topological_order;
  const std::size_t n = circuit_.nodes.size();
  inputs_.resize(n);
  outputs_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    inputs_[i].assign(circuit_.nodes[i].inputs.size(), SIZE_MAX);
    outputs_[i].assign(circuit_.nodes[i].outputs.size(), SIZE_MAX);
  }
  auto add_edge = [&](const std::string& system,
                      std::optional<Endpoint> producer,
                      std::optional<Endpoint> consumer) {
    const std::size_t id = edges_.size();
    edges_.push_back({id, system, circuit_.dim_of(system), producer, consumer});
    if (producer) outputs_[producer->node][producer->port] = id;
    if (consumer) inputs_[consumer->node][consumer->port] = id;
    return id;
  };

  std::vector<std::vector<bool>> in_wired(n), out_wired(n);
  for (std::size_t i = 0; i < n; ++i) {
    in_wired[i].assign(inputs_[i].size(), false);
    out_wired[i].assign(outputs_[i].size(), false);
  }
  for (const auto& w : circuit_.wires) {
    in_wired[*circuit_.node_index(w.to.node)][w.to.port] = true;
    out_wired[*circuit_.node_index(w.from.node)][w.from.port] = true;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t p = 0; p < inputs_[i].size(); ++p) {
      if (!in_wired[i][p]) {
        boundary_inputs_.push_back(
            add_edge(circuit_.nodes[i].inputs[p], std::nullopt, Endpoint{i, p}));
      }
    }
  }
  for (const auto& w : circuit_.wires) {
    const std::size_t from = *circuit_.node_index(w.from.node);
    const std::size_t to = *circuit_.node_index(w.to.node);
    add_edge(circuit_.nodes[from].outputs[w.from.port],
             Endpoint{from, w.from.port}, Endpoint{to, w.to.port});
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t p = 0; p < outputs_[i].size(); ++p) {
      if (!out_wired[i][p]) {
        boundary_outputs_.push_back(add_edge(circuit_.nodes[i].outputs[p],
                                             Endpoint{i, p}, std::nullopt));
      }
    }
  }

  predecessors_.resize(n);
  condition_source_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t id : inputs_[i]) {
      if (edges_[id].producer) predecessors_[i].push_back(edges_[id].producer->node);
    }
    const auto& cond = circuit_.nodes[i].condition;
    if (cond && cond->source != kInputSource) {
      condition_source_[i] = circuit_.node_index(cond->source);
      predecessors_[i].push_back(*condition_source_[i]);
    }
    auto& preds = predecessors_[i];
    std::sort(preds.begin(), preds.end());
    preds.erase(std::unique(preds.begin(), preds.end()), preds.end());
  }
}

std::vector<std::size_t> WiredCircuit::allowed_events(
    std::size_t node, const Assignment& assignment,
    const std::string& input) const {
  const Node& n = circuit_.nodes[node];
  if (!n.condition) {
    std::vector<std::size_t> all(n.events.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    return all;
  }
  std::string key = input;
  if (const auto src = condition_source_[node]) {
    key = circuit_.nodes[*src].events.at(assignment.at(*src)).outcome;
  }
  const auto it = n.condition->map.find(key);
  if (it == n.condition->map.end()) {
    throw DomainError(fmt::format("node {}: no events selected by condition "
                                  "value '{}'",
                                  n.label, key));
  }
  return it->second;
}

std::size_t WiredCircuit::dim_of(std::span<const std::size_t> edge_ids) const {
  std::size_t d = 1;
  for (std::size_t id : edge_ids) d *= edges_.at(id).dim;
  return d;
}

SystemShape WiredCircuit::shape_of(std::span<const std::size_t> edge_ids) const {
  SystemShape shape;
  for (std::size_t id : edge_ids) shape.factor_dims.push_back(edges_.at(id).dim);
  return shape;
}

bool WiredCircuit::deterministic_coarse_graining(double tolerance) const {
  for (const Node& n : circuit_.nodes) {
    std::vector<std::vector<std::size_t>> subsets;
    if (n.condition) {
      for (const auto& [key, subset] : n.condition->map) subsets.push_back(subset);
    } else {
      subsets.emplace_back(n.events.size());
      std::iota(subsets.back().begin(), subsets.back().end(), std::size_t{0});
    }
    const std::size_t d = circuit_.input_dim(n);
    for (const auto& subset : subsets) {
      ComplexMatrix sum = ComplexMatrix::Zero(d, d);
      for (std::size_t e : subset) {
        for (const auto& k : n.events[e].kraus) sum += k.adjoint() * k;
      }
      if (max_abs_diff(sum, ComplexMatrix::Identity(d, d)) > tolerance) {
        return false;
      }
    }
  }
  return true;
}

std::vector<Assignment> WiredCircuit::enumerate_assignments(
    const std::string& input, std::size_t cap) const {
  std::vector<Assignment> out;
  Assignment current(node_count(), 0);
  auto recurse = [&](auto&& self, std::size_t depth) -> void {
    if (depth == order_.size()) {
      if (out.size() >= cap) {
        throw CapExceeded(
            fmt::format("more than {} outcome assignments in circuit {}", cap,
                        circuit_.name));
      }
      out.push_back(current);
      return;
    }
    const std::size_t node = order_[depth];
    for (std::size_t e : allowed_events(node, current, input)) {
      current[node] = e;
      self(self, depth + 1);
    }
  };
  recurse(recurse, 0);
  return out;
}

std::vector<std::string> WiredCircuit::outcome_labels(
    const Assignment& assignment) const {
  std::vector<std::string> labels;
  for (std::size_t node : order_) {
    labels.push_back(circuit_.nodes[node].events.at(assignment.at(node)).outcome);
  }
  return labels;
}

}  // namespace ontic
