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

// Classical theory as an operational theory. States are column vectors of
// nonnegative reals and transformations act by left multiplication, so a
// substochastic matrix is one whose every column sums to at most 1.

#include <cstddef>
#include <optional>
#include <vector>

#include "ontic/tensor.hpp"

namespace ontic {

/// Subnormalized probability vector.
class ClassicalState {
 public:
  /// Throws DomainError on negative entries or total above 1.
  explicit ClassicalState(RealVector probabilities);

  const RealVector& probabilities() const { return p_; }
  std::size_t dim() const { return static_cast<std::size_t>(p_.size()); }
  double total() const { return p_.sum(); }
  bool deterministic(double tolerance = tol::kNum) const;

 private:
  RealVector p_;
};

/// Nonnegative matrix with column sums at most 1.
class MarkovMatrix {
 public:
  explicit MarkovMatrix(RealMatrix matrix);

  const RealMatrix& matrix() const { return m_; }
  std::size_t rows() const { return static_cast<std::size_t>(m_.rows()); }
  std::size_t cols() const { return static_cast<std::size_t>(m_.cols()); }
  bool deterministic(double tolerance = tol::kNum) const;

  static bool valid(const RealMatrix& matrix, double tolerance = tol::kNum);

 private:
  RealMatrix m_;
};

ClassicalState apply_markov(const MarkovMatrix& m, const ClassicalState& x);

/// `second` after `first`.
MarkovMatrix compose(const MarkovMatrix& first, const MarkovMatrix& second);

/// Diagonal of rho in the orthonormal basis given by the columns of `basis`.
ClassicalState dephase(const ComplexMatrix& rho, const ComplexMatrix& basis);

/// diag(x) as a density matrix.
ComplexMatrix embed_classical(const ClassicalState& x);

bool is_permutation(const RealMatrix& m, double tolerance = tol::kNum);

/// The inverse when it exists and is itself a Markov matrix.
std::optional<MarkovMatrix> markov_inverse(const MarkovMatrix& m);

/// Every substochastic dim x dim matrix whose entries are multiples of
/// 1/grid and that has a Markov inverse.
std::vector<RealMatrix> reversible_markov_search(std::size_t dim,
                                                 std::size_t grid);

}  // namespace ontic
