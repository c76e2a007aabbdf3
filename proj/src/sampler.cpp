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

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "ontic/error.hpp"
#include "ontic/parallel.hpp"
#include "ontic/program.hpp"

namespace ontic {

namespace {

std::vector<std::size_t> strides_for(const WiredCircuit& c,
                                     const std::vector<std::size_t>& layout) {
  std::vector<std::size_t> strides(layout.size(), 1);
  for (std::size_t k = layout.size(); k-- > 1;) {
    strides[k - 1] = strides[k] * c.edge(layout[k]).dim;
  }
  return strides;
}

std::size_t position(const std::vector<std::size_t>& layout, std::size_t id) {
  const auto it = std::lower_bound(layout.begin(), layout.end(), id);
  if (it == layout.end() || *it != id) {
    throw DimensionError(fmt::format("edge {} is not live", id));
  }
  return static_cast<std::size_t>(it - layout.begin());
}

// Flat offsets of every multi-index over `subset` (first edge most
// significant) inside a layout with the given strides.
std::vector<std::size_t> offsets(const WiredCircuit& c,
                                 const std::vector<std::size_t>& subset,
                                 const std::vector<std::size_t>& layout,
                                 const std::vector<std::size_t>& strides) {
  std::vector<std::size_t> step(subset.size());
  for (std::size_t k = 0; k < subset.size(); ++k) {
    step[k] = strides[position(layout, subset[k])];
  }
  const std::size_t total = c.dim_of(subset);
  std::vector<std::size_t> out(total);
  std::vector<std::size_t> digits(subset.size(), 0);
  std::size_t offset = 0;
  for (std::size_t i = 0; i < total; ++i) {
    out[i] = offset;
    for (std::size_t k = subset.size(); k-- > 0;) {
      offset += step[k];
      if (++digits[k] < c.edge(subset[k]).dim) break;
      offset -= step[k] * digits[k];
      digits[k] = 0;
    }
  }
  return out;
}

}  // namespace

LayoutState apply_on_edges(const WiredCircuit& c, const LayoutState& state,
                           const std::vector<std::size_t>& in_edges,
                           const std::vector<std::size_t>& out_edges,
                           const ComplexMatrix& op) {
  const std::size_t d_in = c.dim_of(in_edges);
  const std::size_t d_out = c.dim_of(out_edges);
  if (static_cast<std::size_t>(op.cols()) != d_in ||
      static_cast<std::size_t>(op.rows()) != d_out) {
    throw DimensionError("apply_on_edges: operator does not match edges");
  }
  if (static_cast<std::size_t>(state.amplitudes.size()) != c.dim_of(state.edges)) {
    throw DimensionError("apply_on_edges: state does not match its layout");
  }
  std::vector<std::size_t> rest;
  for (std::size_t id : state.edges) {
    if (std::find(in_edges.begin(), in_edges.end(), id) == in_edges.end()) {
      rest.push_back(id);
    }
  }
  LayoutState out;
  out.edges = rest;
  out.edges.insert(out.edges.end(), out_edges.begin(), out_edges.end());
  std::sort(out.edges.begin(), out.edges.end());

  const auto in_strides = strides_for(c, state.edges);
  const auto out_strides = strides_for(c, out.edges);
  const auto off_in = offsets(c, in_edges, state.edges, in_strides);
  const auto off_out = offsets(c, out_edges, out.edges, out_strides);
  const auto base_in = offsets(c, rest, state.edges, in_strides);
  const auto base_out = offsets(c, rest, out.edges, out_strides);

  out.amplitudes = StateVector::Zero(c.dim_of(out.edges));
  Eigen::VectorXcd x(d_in);
  Eigen::VectorXcd y(d_out);
  for (std::size_t r = 0; r < base_in.size(); ++r) {
    for (std::size_t a = 0; a < d_in; ++a) x(a) = state.amplitudes(base_in[r] + off_in[a]);
    y.noalias() = op * x;
    for (std::size_t b = 0; b < d_out; ++b) out.amplitudes(base_out[r] + off_out[b]) = y(b);
  }
  return out;
}

LayoutState apply_node(const WiredCircuit& c, const LayoutState& state,
                       std::size_t node, const ComplexMatrix& op) {
  return apply_on_edges(c, state, c.input_edges(node), c.output_edges(node), op);
}

StepSample sample_step(const WiredCircuit& step, const StateVector& omega,
                       const std::string& input, std::mt19937_64& rng,
                       const EngineOptions& options) {
  if (!is_normalized(omega)) {
    throw DomainError(fmt::format("sample_step: state has norm {}", omega.norm()));
  }
  if (static_cast<std::size_t>(omega.size()) != step.input_dim()) {
    throw DimensionError("sample_step: state does not match the step inputs");
  }
  LayoutState current{omega, step.boundary_inputs()};
  StepSample out;
  out.events.assign(step.node_count(), 0);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);

  for (std::size_t node : step.topological_order()) {
    const Node& n = step.node(node);
    const auto allowed = step.allowed_events(node, out.events, input);
    const auto& in_edges = step.input_edges(node);
    const std::size_t d_in = step.dim_of(in_edges);
    ComplexMatrix coarse = ComplexMatrix::Zero(d_in, d_in);
    std::vector<LayoutState> branches;
    std::vector<double> weights;
    double total = 0.0;
    for (std::size_t e : allowed) {
      const Event& ev = n.events[e];
      if (ev.kraus.size() != 1) {
        throw DomainError(fmt::format(
            "node {} outcome {} has {} Kraus operators; ontic evolution needs "
            "atomic events",
            n.label, ev.outcome, ev.kraus.size()));
      }
      const ComplexMatrix& k = ev.kraus.front();
      coarse += k.adjoint() * k;
      branches.push_back(apply_node(step, current, node, k));
      if (step.dim_of(branches.back().edges) > options.max_dim) {
        throw DimensionError(fmt::format("state dimension {} exceeds cap {}",
                                         branches.back().amplitudes.size(),
                                         options.max_dim));
      }
      weights.push_back(branches.back().amplitudes.squaredNorm());
      total += weights.back();
    }
    const LayoutState projected =
        apply_on_edges(step, current, in_edges, in_edges, coarse);
    const double trace = current.amplitudes.dot(projected.amplitudes).real();
    if (std::abs(total - trace) > options.tolerance) {
      throw DomainError(fmt::format(
          "node {}: outcome weights sum to {:.17g} but the coarse-grained test "
          "gives {:.17g}",
          n.label, total, trace));
    }
    double support = 0.0;
    for (double& w : weights) {
      if (w < kZeroWeight) w = 0.0;
      support += w;
    }
    if (support <= 0.0) {
      throw DomainError(fmt::format("node {}: every outcome has zero weight",
                                    n.label));
    }
    const double u = uniform(rng) * support;
    std::size_t pick = 0;
    double acc = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (weights[i] == 0.0) continue;
      pick = i;
      acc += weights[i];
      if (u < acc) break;
    }
    out.events[node] = allowed[pick];
    out.weight *= weights[pick];
    current = std::move(branches[pick]);
    current.amplitudes /= std::sqrt(weights[pick]);
  }
  out.state = std::move(current.amplitudes);
  return out;
}

Trajectory run_trajectory(const Program& program, std::uint64_t seed,
                          std::uint64_t index, const EngineOptions& options) {
  Trajectory tr;
  tr.seed = seed;
  tr.index = index;
  auto rng = make_stream(seed, index);
  StateVector omega = program.initial_state;
  for (std::size_t t = 0; t < program.steps.size(); ++t) {
    const WiredCircuit& step = program.steps[t];
    StepSample s = sample_step(step, omega, program.inputs[t], rng, options);
    TrajectoryStep rec;
    rec.input = program.inputs[t];
    rec.outcomes = step.outcome_labels(s.events);
    rec.weight = s.weight;
    rec.shape = step.shape_of(step.boundary_outputs());
    if (options.store_states) rec.state = s.state;
    if (options.store_operators && step.input_dim() <= options.operator_cap &&
        step.output_dim() <= options.operator_cap) {
      rec.op = compile_history(step, foliate(step, FoliationStrategy::kAsap),
                               s.events, options.max_dim)
                   .op;
    }
    rec.events = std::move(s.events);
    tr.probability *= rec.weight;
    omega = std::move(s.state);
    if (t + 1 < program.steps.size()) {
      omega = permute_factors(omega, rec.shape, program.links[t]);
    }
    tr.steps.push_back(std::move(rec));
  }
  tr.final_state = std::move(omega);
  return tr;
}

std::vector<Trajectory> run_trajectories(const Program& program,
                                         std::uint64_t seed, std::size_t count,
                                         const EngineOptions& options,
                                         std::size_t threads) {
  std::vector<Trajectory> out(count);
  parallel_for(
      count, [&](std::size_t i) { out[i] = run_trajectory(program, seed, i, options); },
      threads);
  return out;
}

}  // namespace ontic
