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

#include "ontic/classical.hpp"

#include <cmath>

#include <fmt/format.h>

#include "ontic/error.hpp"

namespace ontic {

ClassicalState::ClassicalState(RealVector probabilities)
    : p_(std::move(probabilities)) {
  if (p_.size() == 0) throw DomainError("classical state has no entries");
  if (!p_.allFinite() || p_.minCoeff() < -tol::kNum) {
    throw DomainError("classical state has negative entries");
  }
  if (p_.sum() > 1.0 + tol::kNum) {
    throw DomainError(fmt::format("classical state sums to {}", p_.sum()));
  }
}

bool ClassicalState::deterministic(double tolerance) const {
  return std::abs(p_.sum() - 1.0) <= tolerance;
}

bool MarkovMatrix::valid(const RealMatrix& matrix, double tolerance) {
  if (matrix.size() == 0 || !matrix.allFinite()) return false;
  if (matrix.minCoeff() < -tolerance) return false;
  return matrix.colwise().sum().maxCoeff() <= 1.0 + tolerance;
}

MarkovMatrix::MarkovMatrix(RealMatrix matrix) : m_(std::move(matrix)) {
  if (!valid(m_)) {
    throw DomainError("matrix is not substochastic (negative entry or column "
                      "sum above 1)");
  }
}

bool MarkovMatrix::deterministic(double tolerance) const {
  return ((m_.colwise().sum().array() - 1.0).abs() <= tolerance).all();
}

ClassicalState apply_markov(const MarkovMatrix& m, const ClassicalState& x) {
  if (m.cols() != x.dim()) {
    throw DimensionError(fmt::format("Markov matrix has {} columns, state has "
                                     "{} entries",
                                     m.cols(), x.dim()));
  }
  return ClassicalState(m.matrix() * x.probabilities());
}

MarkovMatrix compose(const MarkovMatrix& first, const MarkovMatrix& second) {
  if (second.cols() != first.rows()) {
    throw DimensionError("Markov composition: dimension mismatch");
  }
  return MarkovMatrix(second.matrix() * first.matrix());
}

ClassicalState dephase(const ComplexMatrix& rho, const ComplexMatrix& basis) {
  if (basis.rows() != rho.rows() || basis.cols() != rho.cols() ||
      rho.rows() != rho.cols()) {
    throw DimensionError("dephase: basis does not match the state");
  }
  if (!is_unitary(basis, 1e-9)) {
    throw DomainError("dephase: basis is not orthonormal");
  }
  RealVector p(rho.rows());
  for (Eigen::Index i = 0; i < rho.rows(); ++i) {
    p(i) = (basis.col(i).adjoint() * rho * basis.col(i))(0, 0).real();
  }
  return ClassicalState(p.cwiseMax(0.0));
}

ComplexMatrix embed_classical(const ClassicalState& x) {
  ComplexMatrix rho = ComplexMatrix::Zero(x.dim(), x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) rho(i, i) = x.probabilities()(i);
  return rho;
}

bool is_permutation(const RealMatrix& m, double tolerance) {
  if (m.rows() != m.cols()) return false;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const double v = m(i, j);
      if (std::abs(v) > tolerance && std::abs(v - 1.0) > tolerance) return false;
    }
  }
  const auto ones = RealVector::Ones(m.rows());
  return (m.colwise().sum().transpose() - ones).cwiseAbs().maxCoeff() <=
             tolerance &&
         (m.rowwise().sum() - ones).cwiseAbs().maxCoeff() <= tolerance;
}

std::optional<MarkovMatrix> markov_inverse(const MarkovMatrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  Eigen::FullPivLU<RealMatrix> lu(m.matrix());
  if (!lu.isInvertible()) return std::nullopt;
  const RealMatrix inverse = lu.inverse();
  if (!MarkovMatrix::valid(inverse, 1e-9)) return std::nullopt;
  return MarkovMatrix(inverse.cwiseMax(0.0));
}

std::vector<RealMatrix> reversible_markov_search(std::size_t dim,
                                                 std::size_t grid) {
  // Columns: compositions of at most `grid` units into `dim` parts.
  std::vector<RealVector> columns;
  RealVector column(dim);
  auto fill = [&](auto&& self, std::size_t row, std::size_t remaining) -> void {
    if (row == dim) {
      columns.push_back(column);
      return;
    }
    for (std::size_t units = 0; units <= remaining; ++units) {
      column(row) = static_cast<double>(units) / static_cast<double>(grid);
      self(self, row + 1, remaining - units);
    }
  };
  fill(fill, 0, grid);

  std::vector<RealMatrix> found;
  RealMatrix candidate(dim, dim);
  auto pick = [&](auto&& self, std::size_t col) -> void {
    if (col == dim) {
      if (markov_inverse(MarkovMatrix(candidate))) found.push_back(candidate);
      return;
    }
    for (const auto& c : columns) {
      candidate.col(col) = c;
      self(self, col + 1);
    }
  };
  pick(pick, 0);
  return found;
}

}  // namespace ontic
