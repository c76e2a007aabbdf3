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

// Which subsystems of an ontic state form a single individual: the finest
// tensor factorization of a pure state, tracked along a trajectory.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ontic/json_codec.hpp"
#include "ontic/program.hpp"
#include "ontic/tensor.hpp"

namespace ontic {

/// Tr(rho^2).
double purity(const ComplexMatrix& rho);

struct MindPartition {
  /// Disjoint blocks of factor indices covering every factor; each block
  /// ascending, blocks ordered by their smallest index.
  std::vector<std::vector<std::size_t>> blocks;
  std::size_t step = 0;

  bool operator==(const MindPartition& other) const { return blocks == other.blocks; }
};

/// Splits off, for each block, the smallest sub-block containing its first
/// factor whose reduced state is pure, and recurses on the remainder. The
/// finest factorization is unique, so the result does not depend on the
/// search order. Throws DomainError for non-normalized input.
MindPartition finest_factorization(const StateVector& psi, const SystemShape& shape,
                                   double tolerance = tol::kPure);

struct TimelineEntry {
  std::size_t step = 0;
  MindPartition partition;
  /// Purity of the reduced state of each factor.
  std::vector<double> purities;
};

/// One entry per step from the stored post-step states. Throws DomainError
/// if a step has no stored state.
std::vector<TimelineEntry> classify_timeline(const Trajectory& trajectory,
                                             double tolerance = tol::kPure);

/// [{step, partition: [[indices]...], purities: [...]}]
Json timeline_to_json(const std::vector<TimelineEntry>& timeline);

using BigCount = boost::multiprecision::uint128_t;

/// Number of integer partitions of n.
std::uint64_t integer_partitions(std::size_t n);

/// p(n) * n!. Throws DomainError for n < 1 or n > 20.
BigCount count_entanglement_patterns(std::size_t n);

/// n! e^{sqrt(2n/3)}, the growth rate quoted for the pattern count.
double pattern_growth_estimate(std::size_t n);

std::string to_string(const BigCount& value);

}  // namespace ontic
