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
#include <string>
#include <vector>

#include "ontic/circuit.hpp"
#include "ontic/tensor.hpp"

namespace ontic {

/// A completely positive, trace-nonincreasing map between composite systems,
/// given by its Kraus operators. Atomic when there is exactly one.
struct Transformation {
  SystemShape input;
  SystemShape output;
  std::vector<ComplexMatrix> kraus;

  std::size_t in_dim() const { return input.total(); }
  std::size_t out_dim() const { return output.total(); }
  bool atomic() const { return kraus.size() == 1; }
};

/// Builds a single-factor transformation; shapes come from the operators.
Transformation make_transformation(std::vector<ComplexMatrix> kraus);

/// Throws DimensionError if any operator disagrees with the signature.
void check_signature(const Transformation& t);

/// `second` after `first`. Kraus operators are all products K2 K1.
Transformation compose_sequential(const Transformation& first,
                                  const Transformation& second);

/// Shapes concatenate; Kraus operators are all pairwise tensor products.
Transformation compose_parallel(const Transformation& a,
                                const Transformation& b,
                                std::size_t max_dim = kDefaultMaxDim);

/// rho -> sum_i K_i rho K_i^dag.
ComplexMatrix apply_channel(const Transformation& t, const ComplexMatrix& rho);

/// Unnormalized K psi; its squared norm is the outcome weight.
StateVector apply_atomic(const Transformation& t, const StateVector& psi);

/// sum_i K_i^dag K_i.
ComplexMatrix effect_sum(const std::vector<ComplexMatrix>& kraus);
bool is_trace_nonincreasing(const std::vector<ComplexMatrix>& kraus,
                            double tolerance = tol::kTest);
bool is_trace_preserving(const std::vector<ComplexMatrix>& kraus,
                         double tolerance = tol::kNum);

/// Coarse-graining of a test: the sum over all of its events. Conditioned
/// tests contribute the subset selected by `condition_key` (ignored when the
/// node is unconditioned).
Transformation epistemic_of(const Circuit& circuit, const Node& test,
                            const std::string& condition_key = {});

/// The event as a transformation with the node's signature.
Transformation event_transformation(const Circuit& circuit, const Node& node,
                                    std::size_t event);

/// Tr of the prepared subnormalized state. Requires a trivial input.
double born_probability(const Transformation& preparation);

/// A test whose events are each atomic: one operator per outcome.
struct KrausSet {
  std::vector<ComplexMatrix> operators;
  std::vector<std::string> labels;

  bool atomic() const { return operators.size() == 1; }
  bool deterministic(double tolerance = tol::kNum) const {
    return is_trace_preserving(operators, tolerance);
  }
};

/// Appends the outcome "discard" with operator sqrt(I - sum K^dag K) so that
/// the set becomes trace-preserving. Deterministic input is returned as is.
KrausSet complete_with_discard(const KrausSet& set);

/// Unitary realization of a deterministic test on system (x) ancilla.
/// The ancilla starts in `ancilla_state`; projector i on the ancilla selects
/// outcome i.
struct Dilation {
  ComplexMatrix unitary;
  StateVector ancilla_state;
  std::vector<ComplexMatrix> projectors;
  std::size_t system_dim = 0;
  std::size_t ancilla_dim = 0;
};

/// Requires square, trace-preserving operators (see complete_with_discard).
Dilation dilate(const KrausSet& set);

/// Tr_E[U (rho (x) sigma) U^dag (I (x) P_i)].
ComplexMatrix dilation_branch(const Dilation& dilation, const ComplexMatrix& rho,
                              std::size_t outcome);

/// Maximal classical information extractable from the system, in bits.
double holevo_limit(const SystemShape& shape);

}  // namespace ontic
