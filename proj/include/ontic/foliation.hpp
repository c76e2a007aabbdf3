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
#include <random>
#include <span>
#include <vector>

#include "ontic/wiring.hpp"

namespace ontic {

enum class FoliationStrategy { kAsap, kAlap, kGiven };

/// Ordered global cuts of a circuit. leaves[k] is the set of edges crossing
/// the cut before slices[k]; leaves.front() are the circuit inputs and
/// leaves.back() its outputs. Every node lies in exactly one slice and a
/// slice may contain wired chains of nodes.
struct Foliation {
  std::vector<std::vector<std::size_t>> leaves;
  std::vector<std::vector<std::size_t>> slices;
};

/// Levelled foliation. Wires force strictly later slices; a conditioning
/// link only forbids the target from preceding its source, since outcomes
/// are fixed before a slice is compiled.
Foliation foliate(const WiredCircuit& circuit, FoliationStrategy strategy);

/// Foliation with user-given slices (node indices). Throws CircuitError if a
/// node is missing, repeated, or placed before one of its predecessors.
Foliation foliation_from_slices(const WiredCircuit& circuit,
                                std::vector<std::vector<std::size_t>> slices);

/// Same, with slices given by node label.
Foliation foliation_from_labels(
    const WiredCircuit& circuit,
    const std::vector<std::vector<std::string>>& slices);

/// Random linear extension cut into random contiguous slices.
Foliation random_foliation(const WiredCircuit& circuit, std::mt19937_64& rng);

/// Operator of one slice, mapping the edges of `in` (ascending ids) to the
/// edges of `out`.
struct SliceOperator {
  ComplexMatrix op;
  std::vector<std::size_t> in;
  std::vector<std::size_t> out;
};

/// Tensor product of the chosen Kraus operators of the slice's nodes and
/// identities on the edges passing through, permuted into the wire layout.
/// Chains inside a slice are multiplied in causal order. Throws DomainError
/// for non-atomic events and DimensionError beyond max_dim.
SliceOperator compile_slice(const WiredCircuit& circuit,
                            std::span<const std::size_t> slice,
                            std::span<const std::size_t> in_cut,
                            const Assignment& outcomes,
                            std::size_t max_dim = kDefaultMaxDim);

struct HistoryOperator {
  ComplexMatrix op;
  std::size_t factor_count = 0;
};

/// Ordered product of compiled slices, latest slice leftmost.
HistoryOperator compile_history(const WiredCircuit& circuit,
                                const Foliation& foliation,
                                const Assignment& outcomes,
                                std::size_t max_dim = kDefaultMaxDim);

/// Throws DomainError unless every node's event is allowed by conditioning.
void check_assignment(const WiredCircuit& circuit, const Assignment& outcomes,
                      const std::string& input);

}  // namespace ontic
