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
#include "ontic/individuation.hpp"

namespace ontic {

namespace {

bool pure_marginal(const StateVector& psi, const SystemShape& shape,
                   const std::vector<std::size_t>& subset, double tolerance) {
  return purity(reduced_density(psi, shape, subset)) >= 1.0 - tolerance;
}

// Subsets of `block` that contain block.front(), by increasing size and then
// lexicographically. The full block itself is excluded.
std::vector<std::size_t> smallest_pure_sub_block(
    const StateVector& psi, const SystemShape& shape,
    const std::vector<std::size_t>& block, double tolerance) {
  const std::size_t n = block.size();
  for (std::size_t size = 1; size < n; ++size) {
    // Choose size - 1 further members from block[1..n).
    std::vector<std::size_t> pick(size - 1);
    for (std::size_t i = 0; i + 1 < size; ++i) pick[i] = i + 1;
    while (true) {
      std::vector<std::size_t> subset{block.front()};
      for (std::size_t i : pick) subset.push_back(block[i]);
      if (pure_marginal(psi, shape, subset, tolerance)) return subset;
      std::size_t k = pick.size();
      while (k > 0 && pick[k - 1] == n - (pick.size() - k) - 1) --k;
      if (k == 0) break;
      ++pick[k - 1];
      for (std::size_t j = k; j < pick.size(); ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return block;
}

}  // namespace

double purity(const ComplexMatrix& rho) {
  return (rho * rho).trace().real();
}

MindPartition finest_factorization(const StateVector& psi, const SystemShape& shape,
                                   double tolerance) {
  if (static_cast<std::size_t>(psi.size()) != shape.total()) {
    throw DimensionError("state does not match its shape");
  }
  if (!is_normalized(psi)) {
    throw DomainError(fmt::format("state has norm {}", psi.norm()));
  }
  MindPartition out;
  std::vector<std::size_t> rest(shape.size());
  for (std::size_t i = 0; i < rest.size(); ++i) rest[i] = i;
  while (!rest.empty()) {
    std::vector<std::size_t> block = smallest_pure_sub_block(psi, shape, rest, tolerance);
    std::vector<std::size_t> remainder;
    std::set_difference(rest.begin(), rest.end(), block.begin(), block.end(),
                        std::back_inserter(remainder));
    out.blocks.push_back(std::move(block));
    rest = std::move(remainder);
  }
  return out;
}

std::vector<TimelineEntry> classify_timeline(const Trajectory& trajectory,
                                             double tolerance) {
  std::vector<TimelineEntry> out;
  for (std::size_t t = 0; t < trajectory.steps.size(); ++t) {
    const TrajectoryStep& step = trajectory.steps[t];
    if (!step.state) {
      throw DomainError(fmt::format("step {} has no stored state", t));
    }
    TimelineEntry entry;
    entry.step = t;
    entry.partition = finest_factorization(*step.state, step.shape, tolerance);
    entry.partition.step = t;
    for (std::size_t k = 0; k < step.shape.size(); ++k) {
      const std::vector<std::size_t> keep{k};
      entry.purities.push_back(purity(reduced_density(*step.state, step.shape, keep)));
    }
    out.push_back(std::move(entry));
  }
  return out;
}

Json timeline_to_json(const std::vector<TimelineEntry>& timeline) {
  Json out = Json::array();
  for (const auto& e : timeline) {
    out.push_back(Json{{"step", e.step},
                       {"partition", e.partition.blocks},
                       {"purities", e.purities}});
  }
  return out;
}

std::uint64_t integer_partitions(std::size_t n) {
  std::vector<std::uint64_t> p(n + 1, 0);
  p[0] = 1;
  for (std::size_t part = 1; part <= n; ++part) {
    for (std::size_t total = part; total <= n; ++total) p[total] += p[total - part];
  }
  return p[n];
}

BigCount count_entanglement_patterns(std::size_t n) {
  if (n < 1 || n > 20) {
    throw DomainError(fmt::format("pattern count supports 1 <= n <= 20, got {}", n));
  }
  BigCount factorial = 1;
  for (std::size_t k = 2; k <= n; ++k) factorial *= k;
  return BigCount(integer_partitions(n)) * factorial;
}

double pattern_growth_estimate(std::size_t n) {
  return std::tgamma(static_cast<double>(n) + 1.0) *
         std::exp(std::sqrt(2.0 * static_cast<double>(n) / 3.0));
}

std::string to_string(const BigCount& value) { return value.str(); }

}  // namespace ontic
