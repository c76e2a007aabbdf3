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

#include "ontic/foliation.hpp"

#include <algorithm>
#include <set>

#include <fmt/format.h>

#include "ontic/error.hpp"

namespace ontic {

namespace {

std::vector<std::size_t> sorted(std::vector<std::size_t> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// Edges crossing the cut between slice k-1 and slice k.
std::vector<std::vector<std::size_t>> leaves_of(
    const WiredCircuit& c, const std::vector<std::size_t>& slice_of) {
  const std::size_t slice_count =
      slice_of.empty() ? 0 : *std::max_element(slice_of.begin(), slice_of.end()) + 1;
  std::vector<std::vector<std::size_t>> leaves(slice_count + 1);
  for (const Edge& e : c.edges()) {
    const std::size_t born = e.producer ? slice_of[e.producer->node] + 1 : 0;
    const std::size_t dies = e.consumer ? slice_of[e.consumer->node] : slice_count;
    for (std::size_t k = born; k <= dies; ++k) leaves[k].push_back(e.id);
  }
  return leaves;
}

Foliation from_levels(const WiredCircuit& c, const std::vector<std::size_t>& level) {
  const std::size_t count =
      level.empty() ? 0 : *std::max_element(level.begin(), level.end()) + 1;
  Foliation f;
  f.slices.resize(count);
  for (std::size_t node : c.topological_order()) f.slices[level[node]].push_back(node);
  f.slices.erase(std::remove_if(f.slices.begin(), f.slices.end(),
                                [](const auto& s) { return s.empty(); }),
                 f.slices.end());
  return foliation_from_slices(c, std::move(f.slices));
}

bool is_wire_predecessor(const WiredCircuit& c, std::size_t pred,
                         std::size_t node) {
  for (std::size_t id : c.input_edges(node)) {
    const auto& producer = c.edge(id).producer;
    if (producer && producer->node == pred) return true;
  }
  return false;
}

// Mixed-radix map from grouped factor order to layout order.
std::vector<std::size_t> layout_indices(const WiredCircuit& c,
                                        const std::vector<std::size_t>& grouped,
                                        const std::vector<std::size_t>& layout) {
  std::vector<std::size_t> layout_stride(layout.size(), 1);
  for (std::size_t k = layout.size(); k-- > 1;) {
    layout_stride[k - 1] = layout_stride[k] * c.edge(layout[k]).dim;
  }
  std::vector<std::size_t> stride_for_grouped(grouped.size());
  for (std::size_t g = 0; g < grouped.size(); ++g) {
    const auto pos = std::find(layout.begin(), layout.end(), grouped[g]) - layout.begin();
    stride_for_grouped[g] = layout_stride[pos];
  }
  const std::size_t total = c.dim_of(grouped);
  std::vector<std::size_t> out(total);
  std::vector<std::size_t> digits(grouped.size(), 0);
  for (std::size_t i = 0; i < total; ++i) {
    std::size_t idx = 0;
    for (std::size_t g = 0; g < grouped.size(); ++g) idx += digits[g] * stride_for_grouped[g];
    out[i] = idx;
    for (std::size_t g = grouped.size(); g-- > 0;) {
      if (++digits[g] < c.edge(grouped[g]).dim) break;
      digits[g] = 0;
    }
  }
  return out;
}

SliceOperator compile_layer(const WiredCircuit& c,
                            const std::vector<std::size_t>& layer,
                            const std::vector<std::size_t>& in_cut,
                            const Assignment& outcomes, std::size_t max_dim) {
  std::vector<std::size_t> grouped_in;
  std::vector<std::size_t> grouped_out;
  ComplexMatrix kron = ComplexMatrix::Identity(1, 1);
  for (std::size_t node : layer) {
    for (std::size_t id : c.input_edges(node)) {
      if (!std::binary_search(in_cut.begin(), in_cut.end(), id)) {
        throw DimensionError(fmt::format(
            "node {} reads edge {} which is not on the incoming cut",
            c.node(node).label, id));
      }
      grouped_in.push_back(id);
    }
    const auto& outs = c.output_edges(node);
    grouped_out.insert(grouped_out.end(), outs.begin(), outs.end());
    const Event& event = c.node(node).events.at(outcomes.at(node));
    if (event.kraus.size() != 1) {
      throw DomainError(fmt::format("node {} outcome {} is not atomic",
                                    c.node(node).label, event.outcome));
    }
    kron = tensor_product(kron, event.kraus.front(), max_dim);
  }
  std::vector<std::size_t> passing;
  for (std::size_t id : in_cut) {
    if (std::find(grouped_in.begin(), grouped_in.end(), id) == grouped_in.end()) {
      passing.push_back(id);
    }
  }
  grouped_in.insert(grouped_in.end(), passing.begin(), passing.end());
  grouped_out.insert(grouped_out.end(), passing.begin(), passing.end());
  const std::size_t pass_dim = c.dim_of(passing);
  kron = tensor_product(kron, ComplexMatrix::Identity(pass_dim, pass_dim), max_dim);

  SliceOperator out;
  out.in = in_cut;
  out.out = sorted(grouped_out);
  const auto cols = layout_indices(c, grouped_in, out.in);
  const auto rows = layout_indices(c, grouped_out, out.out);
  out.op = ComplexMatrix::Zero(kron.rows(), kron.cols());
  for (Eigen::Index r = 0; r < kron.rows(); ++r) {
    for (Eigen::Index k = 0; k < kron.cols(); ++k) {
      out.op(rows[r], cols[k]) = kron(r, k);
    }
  }
  return out;
}

}  // namespace

void check_assignment(const WiredCircuit& c, const Assignment& outcomes,
                      const std::string& input) {
  if (outcomes.size() != c.node_count()) {
    throw DomainError(fmt::format("assignment has {} entries for {} nodes",
                                  outcomes.size(), c.node_count()));
  }
  for (std::size_t node : c.topological_order()) {
    const auto allowed = c.allowed_events(node, outcomes, input);
    if (std::find(allowed.begin(), allowed.end(), outcomes[node]) == allowed.end()) {
      throw DomainError(fmt::format("node {}: event {} is not selectable",
                                    c.node(node).label, outcomes[node]));
    }
  }
}

Foliation foliation_from_slices(const WiredCircuit& c,
                                std::vector<std::vector<std::size_t>> slices) {
  const std::size_t n = c.node_count();
  std::vector<std::size_t> slice_of(n, SIZE_MAX);
  for (std::size_t k = 0; k < slices.size(); ++k) {
    if (slices[k].empty()) throw CircuitError("foliation has an empty slice");
    for (std::size_t node : slices[k]) {
      if (node >= n) throw CircuitError("foliation names an unknown node");
      if (slice_of[node] != SIZE_MAX) {
        throw CircuitError(fmt::format("node {} appears in two slices",
                                       c.node(node).label));
      }
      slice_of[node] = k;
    }
  }
  for (std::size_t node = 0; node < n; ++node) {
    if (slice_of[node] == SIZE_MAX) {
      throw CircuitError(fmt::format("node {} is in no slice", c.node(node).label));
    }
    for (std::size_t pred : c.predecessors(node)) {
      if (slice_of[pred] > slice_of[node]) {
        throw CircuitError(fmt::format("node {} is placed before its "
                                       "predecessor {}",
                                       c.node(node).label, c.node(pred).label));
      }
    }
  }
  // Keep each slice in topological order so chains compile causally.
  std::vector<std::size_t> rank(n);
  for (std::size_t i = 0; i < n; ++i) rank[c.topological_order()[i]] = i;
  for (auto& s : slices) {
    std::sort(s.begin(), s.end(),
              [&](std::size_t a, std::size_t b) { return rank[a] < rank[b]; });
  }
  Foliation f;
  f.leaves = n == 0 ? std::vector<std::vector<std::size_t>>{c.boundary_inputs()}
                    : leaves_of(c, slice_of);
  f.slices = std::move(slices);
  return f;
}

Foliation foliation_from_labels(
    const WiredCircuit& c, const std::vector<std::vector<std::string>>& slices) {
  std::vector<std::vector<std::size_t>> indices;
  for (const auto& s : slices) {
    auto& out = indices.emplace_back();
    for (const auto& label : s) {
      const auto idx = c.circuit().node_index(label);
      if (!idx) throw CircuitError("foliation names unknown node " + label);
      out.push_back(*idx);
    }
  }
  return foliation_from_slices(c, std::move(indices));
}

Foliation foliate(const WiredCircuit& c, FoliationStrategy strategy) {
  const std::size_t n = c.node_count();
  const auto& order = c.topological_order();
  std::vector<std::size_t> level(n, 0);
  for (std::size_t node : order) {
    for (std::size_t pred : c.predecessors(node)) {
      const std::size_t gap = is_wire_predecessor(c, pred, node) ? 1 : 0;
      level[node] = std::max(level[node], level[pred] + gap);
    }
  }
  switch (strategy) {
    case FoliationStrategy::kAsap:
      return from_levels(c, level);
    case FoliationStrategy::kAlap: {
      const std::size_t last =
          n == 0 ? 0 : *std::max_element(level.begin(), level.end());
      std::vector<std::size_t> late(n, last);
      for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const std::size_t node = *it;
        for (std::size_t pred : c.predecessors(node)) {
          const std::size_t gap = is_wire_predecessor(c, pred, node) ? 1 : 0;
          late[pred] = std::min(late[pred], late[node] - gap);
        }
      }
      return from_levels(c, late);
    }
    case FoliationStrategy::kGiven:
      break;
  }
  throw DomainError("foliate: the given strategy needs explicit slices");
}

Foliation random_foliation(const WiredCircuit& c, std::mt19937_64& rng) {
  const std::size_t n = c.node_count();
  std::vector<bool> placed(n, false);
  std::vector<std::size_t> extension;
  while (extension.size() < n) {
    std::vector<std::size_t> ready;
    for (std::size_t node = 0; node < n; ++node) {
      if (placed[node]) continue;
      const auto& preds = c.predecessors(node);
      if (std::all_of(preds.begin(), preds.end(),
                      [&](std::size_t p) { return placed[p]; })) {
        ready.push_back(node);
      }
    }
    std::uniform_int_distribution<std::size_t> pick(0, ready.size() - 1);
    const std::size_t node = ready[pick(rng)];
    placed[node] = true;
    extension.push_back(node);
  }
  std::vector<std::vector<std::size_t>> slices;
  std::bernoulli_distribution cut(0.5);
  for (std::size_t i = 0; i < n; ++i) {
    if (i == 0 || cut(rng)) slices.emplace_back();
    slices.back().push_back(extension[i]);
  }
  return foliation_from_slices(c, std::move(slices));
}

SliceOperator compile_slice(const WiredCircuit& c,
                            std::span<const std::size_t> slice,
                            std::span<const std::size_t> in_cut,
                            const Assignment& outcomes, std::size_t max_dim) {
  if (outcomes.size() != c.node_count()) {
    throw DomainError("compile_slice: missing outcome assignment");
  }
  std::vector<std::size_t> cut = sorted({in_cut.begin(), in_cut.end()});
  if (c.dim_of(cut) > max_dim) {
    throw DimensionError(fmt::format("cut dimension {} exceeds cap {}",
                                     c.dim_of(cut), max_dim));
  }
  const std::set<std::size_t> members(slice.begin(), slice.end());
  std::set<std::size_t> done;
  SliceOperator total{ComplexMatrix::Identity(c.dim_of(cut), c.dim_of(cut)), cut, cut};
  while (done.size() < members.size()) {
    // Nodes whose wire producers inside the slice are already compiled.
    std::vector<std::size_t> layer;
    for (std::size_t node : slice) {
      if (done.contains(node)) continue;
      bool ready = true;
      for (std::size_t id : c.input_edges(node)) {
        const auto& producer = c.edge(id).producer;
        if (producer && members.contains(producer->node) &&
            !done.contains(producer->node)) {
          ready = false;
        }
      }
      if (ready) layer.push_back(node);
    }
    if (layer.empty()) throw DimensionError("slice contains a cycle");
    SliceOperator step = compile_layer(c, layer, total.out, outcomes, max_dim);
    total.op = step.op * total.op;
    total.out = std::move(step.out);
    done.insert(layer.begin(), layer.end());
  }
  return total;
}

HistoryOperator compile_history(const WiredCircuit& c, const Foliation& f,
                                const Assignment& outcomes,
                                std::size_t max_dim) {
  std::vector<std::size_t> cut = sorted(f.leaves.front());
  const std::size_t d = c.dim_of(cut);
  HistoryOperator h{ComplexMatrix::Identity(d, d), 0};
  for (std::size_t k = 0; k < f.slices.size(); ++k) {
    SliceOperator s = compile_slice(c, f.slices[k], cut, outcomes, max_dim);
    if (s.out != sorted(f.leaves[k + 1])) {
      throw DimensionError(fmt::format("slice {} does not end on leaf {}", k, k + 1));
    }
    h.op = s.op * h.op;
    ++h.factor_count;
    cut = std::move(s.out);
  }
  return h;
}

}  // namespace ontic
