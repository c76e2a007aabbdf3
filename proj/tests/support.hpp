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

// Shared test helpers: independent reference implementations and random
// circuit generation.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "ontic/circuit.hpp"
#include "ontic/tensor.hpp"
#include "ontic/wiring.hpp"

#ifndef ONTIC_CIRCUITS_DIR
#define ONTIC_CIRCUITS_DIR "circuits"
#endif

namespace ontic::testing {

inline std::string circuit_path(const std::string& name) {
  return std::string(ONTIC_CIRCUITS_DIR) + "/" + name;
}

// Kronecker product by explicit index arithmetic.
inline ComplexMatrix kron_oracle(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

inline std::vector<std::size_t> digits_of(std::size_t index,
                                          const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> d(dims.size());
  for (std::size_t k = dims.size(); k-- > 0;) {
    d[k] = index % dims[k];
    index /= dims[k];
  }
  return d;
}

// Partial trace by summing matrix elements whose traced digits agree.
inline ComplexMatrix partial_trace_oracle(const ComplexMatrix& rho,
                                          const std::vector<std::size_t>& dims,
                                          const std::vector<std::size_t>& keep) {
  std::size_t kept = 1;
  for (std::size_t k : keep) kept *= dims[k];
  ComplexMatrix out = ComplexMatrix::Zero(kept, kept);
  for (Eigen::Index r = 0; r < rho.rows(); ++r) {
    const auto dr = digits_of(r, dims);
    for (Eigen::Index c = 0; c < rho.cols(); ++c) {
      const auto dc = digits_of(c, dims);
      bool traced_equal = true;
      for (std::size_t k = 0; k < dims.size(); ++k) {
        if (std::find(keep.begin(), keep.end(), k) == keep.end() && dr[k] != dc[k]) {
          traced_equal = false;
          break;
        }
      }
      if (!traced_equal) continue;
      std::size_t kr = 0;
      std::size_t kc = 0;
      for (std::size_t k : keep) {
        kr = kr * dims[k] + dr[k];
        kc = kc * dims[k] + dc[k];
      }
      out(kr, kc) += rho(r, c);
    }
  }
  return out;
}

// Integer partitions listed explicitly as nonincreasing sequences.
inline std::vector<std::vector<std::size_t>> partitions_brute_force(std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> current;
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t left,
                                                          std::size_t max_part) {
    if (left == 0) {
      out.push_back(current);
      return;
    }
    for (std::size_t part = std::min(left, max_part); part >= 1; --part) {
      current.push_back(part);
      rec(left - part, part);
      current.pop_back();
    }
  };
  rec(n, n);
  return out;
}

// A complete random test d_in -> d_out with `events` atomic outcomes, cut from
// the columns of a Haar unitary.
inline std::vector<ComplexMatrix> random_test(std::mt19937_64& rng, std::size_t d_in,
                                              std::size_t d_out, std::size_t events) {
  while (events * d_out < d_in) ++events;
  const std::size_t big = events * d_out;
  const ComplexMatrix u = random_unitary(rng, big);
  std::vector<ComplexMatrix> out;
  for (std::size_t e = 0; e < events; ++e) {
    out.push_back(u.block(e * d_out, 0, d_out, d_in));
  }
  return out;
}

struct RandomCircuitOptions {
  std::size_t min_nodes = 4;
  std::size_t max_nodes = 8;
  std::size_t max_live_dim = 64;
  double condition_probability = 0.3;
};

// Random open circuit: each node consumes 0-2 live wires and emits 0-2 new
// ones, keeping the product of live dimensions bounded. Conditioned nodes
// carry one complete group of events per source outcome.
inline Circuit random_circuit(std::mt19937_64& rng, const RandomCircuitOptions& opt = {}) {
  std::uniform_int_distribution<std::size_t> node_count(opt.min_nodes, opt.max_nodes);
  std::uniform_int_distribution<std::size_t> small(0, 2);
  std::uniform_int_distribution<std::size_t> dim_pick(2, 3);
  std::uniform_int_distribution<std::size_t> events_pick(1, 3);
  std::uniform_real_distribution<double> coin(0.0, 1.0);

  Circuit c;
  c.name = "random";
  struct Live {
    std::string system;
    std::size_t dim;
    std::string node;  // empty for boundary inputs
    std::size_t port;
  };
  std::vector<Live> live;
  std::size_t wires = 0;
  auto new_system = [&](std::size_t dim) {
    std::string label = "s" + std::to_string(wires++);
    c.systems.push_back(System{label, dim, Theory::kQuantum});
    return label;
  };
  auto live_dim = [&] {
    std::size_t d = 1;
    for (const auto& l : live) d *= l.dim;
    return d;
  };
  const std::size_t boundary = small(rng);
  for (std::size_t i = 0; i < boundary; ++i) {
    const std::size_t d = dim_pick(rng);
    live.push_back({new_system(d), d, "", 0});
  }
  const std::size_t n = node_count(rng);
  for (std::size_t attempt = 0; c.nodes.size() < n && attempt < 100; ++attempt) {
    Node node;
    node.label = "n" + std::to_string(c.nodes.size());
    std::size_t d_in = 1;
    const std::size_t take = std::min(small(rng), live.size());
    std::vector<Live> consumed;
    for (std::size_t i = 0; i < take; ++i) {
      std::uniform_int_distribution<std::size_t> which(0, live.size() - 1);
      const std::size_t w = which(rng);
      consumed.push_back(live[w]);
      live.erase(live.begin() + w);
    }
    for (std::size_t p = 0; p < consumed.size(); ++p) {
      node.inputs.push_back(consumed[p].system);
      d_in *= consumed[p].dim;
      if (!consumed[p].node.empty()) {
        c.wires.push_back(Wire{{consumed[p].node, consumed[p].port}, {node.label, p}});
      }
    }
    std::size_t d_out = 1;
    std::size_t emit = small(rng);
    if (take == 0 && emit == 0) emit = 1;
    std::vector<std::size_t> out_dims;
    for (std::size_t i = 0; i < emit; ++i) {
      const std::size_t d = dim_pick(rng);
      if (live_dim() * d_out * d > opt.max_live_dim) break;
      out_dims.push_back(d);
      d_out *= d;
    }
    if (consumed.empty() && out_dims.empty()) continue;
    for (std::size_t i = 0; i < out_dims.size(); ++i) {
      const std::string label = new_system(out_dims[i]);
      node.outputs.push_back(label);
    }
    std::vector<std::size_t> sources;
    for (std::size_t j = 0; j < c.nodes.size(); ++j) sources.push_back(j);
    const bool conditioned = !sources.empty() && coin(rng) < opt.condition_probability;
    if (conditioned) {
      std::uniform_int_distribution<std::size_t> which(0, sources.size() - 1);
      const Node& src = c.nodes[sources[which(rng)]];
      Condition cond{src.label, {}};
      for (const auto& ev : src.events) {
        if (cond.map.count(ev.outcome)) continue;
        auto group = random_test(rng, d_in, d_out, events_pick(rng));
        std::vector<std::size_t> idx;
        for (auto& k_op : group) {
          idx.push_back(node.events.size());
          node.events.push_back(
              Event{std::to_string(node.events.size()), {std::move(k_op)}});
        }
        cond.map[ev.outcome] = idx;
      }
      node.condition = std::move(cond);
    } else {
      auto group = random_test(rng, d_in, d_out, events_pick(rng));
      for (auto& k_op : group) {
        node.events.push_back(
            Event{std::to_string(node.events.size()), {std::move(k_op)}});
      }
    }
    for (std::size_t i = 0; i < node.outputs.size(); ++i) {
      live.push_back({node.outputs[i], out_dims[i], node.label, i});
    }
    c.nodes.push_back(std::move(node));
  }
  return c;
}

// Walks the circuit in topological order choosing a random allowed event.
inline Assignment random_assignment(const WiredCircuit& w, const std::string& input,
                                    std::mt19937_64& rng) {
  Assignment a(w.node_count(), 0);
  for (std::size_t node : w.topological_order()) {
    const auto allowed = w.allowed_events(node, a, input);
    std::uniform_int_distribution<std::size_t> pick(0, allowed.size() - 1);
    a[node] = allowed[pick(rng)];
  }
  return a;
}

}  // namespace ontic::testing
