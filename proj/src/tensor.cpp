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

#include "ontic/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ontic/error.hpp"

namespace ontic {

namespace {

std::vector<std::size_t> strides_of(const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> strides(dims.size(), 1);
  for (std::size_t k = dims.size(); k-- > 1;) {
    strides[k - 1] = strides[k] * dims[k];
  }
  return strides;
}

std::vector<std::size_t> checked_keep(const SystemShape& shape,
                                      std::span<const std::size_t> keep) {
  std::vector<std::size_t> sorted(keep.begin(), keep.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw DomainError("partial trace: duplicate kept factor");
  }
  for (std::size_t k : sorted) {
    if (k >= shape.size()) {
      throw DomainError("partial trace: factor index " + std::to_string(k) +
                        " out of range for " + std::to_string(shape.size()) +
                        " factors");
    }
  }
  return sorted;
}

}  // namespace

std::size_t SystemShape::total() const {
  return std::accumulate(factor_dims.begin(), factor_dims.end(),
                         std::size_t{1}, std::multiplies<>());
}

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b,
                             std::size_t max_dim) {
  const std::size_t rows = static_cast<std::size_t>(a.rows()) * b.rows();
  const std::size_t cols = static_cast<std::size_t>(a.cols()) * b.cols();
  if (rows > max_dim || cols > max_dim) {
    throw DimensionError("tensor product of size " + std::to_string(rows) +
                         "x" + std::to_string(cols) + " exceeds cap " +
                         std::to_string(max_dim));
  }
  ComplexMatrix out(rows, cols);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

StateVector tensor_product(const StateVector& a, const StateVector& b) {
  StateVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, const SystemShape& shape,
                            std::span<const std::size_t> keep) {
  const std::size_t dim = shape.total();
  if (rho.rows() != rho.cols() || static_cast<std::size_t>(rho.rows()) != dim) {
    throw DimensionError("partial trace: operator does not match shape");
  }
  const auto kept = checked_keep(shape, keep);
  std::vector<bool> is_kept(shape.size(), false);
  for (std::size_t k : kept) is_kept[k] = true;

  std::size_t kept_dim = 1;
  std::size_t traced_dim = 1;
  for (std::size_t k = 0; k < shape.size(); ++k) {
    (is_kept[k] ? kept_dim : traced_dim) *= shape.factor_dims[k];
  }

  // Group full indices by their traced digits; within a group, position is the
  // kept index.
  std::vector<std::vector<std::size_t>> groups(
      traced_dim, std::vector<std::size_t>(kept_dim));
  const auto strides = strides_of(shape.factor_dims);
  for (std::size_t i = 0; i < dim; ++i) {
    std::size_t kidx = 0;
    std::size_t tidx = 0;
    for (std::size_t k = 0; k < shape.size(); ++k) {
      const std::size_t digit = (i / strides[k]) % shape.factor_dims[k];
      if (is_kept[k]) {
        kidx = kidx * shape.factor_dims[k] + digit;
      } else {
        tidx = tidx * shape.factor_dims[k] + digit;
      }
    }
    groups[tidx][kidx] = i;
  }

  ComplexMatrix out = ComplexMatrix::Zero(kept_dim, kept_dim);
  for (const auto& g : groups) {
    for (std::size_t a = 0; a < kept_dim; ++a) {
      for (std::size_t b = 0; b < kept_dim; ++b) {
        out(a, b) += rho(g[a], g[b]);
      }
    }
  }
  return out;
}

StateVector permute_factors(const StateVector& psi, const SystemShape& shape,
                            std::span<const std::size_t> order) {
  const std::size_t n = shape.size();
  if (order.size() != n || static_cast<std::size_t>(psi.size()) != shape.total()) {
    throw DimensionError("permute_factors: order does not match shape");
  }
  std::vector<std::size_t> new_dims(n);
  std::vector<std::size_t> position(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    if (order[k] >= n || position[order[k]] != n) {
      throw DomainError("permute_factors: order is not a permutation");
    }
    new_dims[k] = shape.factor_dims[order[k]];
    position[order[k]] = k;
  }
  const auto old_strides = strides_of(shape.factor_dims);
  const auto new_strides = strides_of(new_dims);
  StateVector out(psi.size());
  for (Eigen::Index i = 0; i < psi.size(); ++i) {
    std::size_t target = 0;
    for (std::size_t f = 0; f < n; ++f) {
      const std::size_t digit = (i / old_strides[f]) % shape.factor_dims[f];
      target += digit * new_strides[position[f]];
    }
    out(target) = psi(i);
  }
  return out;
}

ComplexMatrix reduced_density(const StateVector& psi, const SystemShape& shape,
                              std::span<const std::size_t> keep) {
  if (static_cast<std::size_t>(psi.size()) != shape.total()) {
    throw DimensionError("reduced_density: vector does not match shape");
  }
  const auto kept = checked_keep(shape, keep);
  std::vector<std::size_t> order(kept);
  std::size_t kept_dim = 1;
  for (std::size_t k : kept) kept_dim *= shape.factor_dims[k];
  for (std::size_t k = 0; k < shape.size(); ++k) {
    if (!std::binary_search(kept.begin(), kept.end(), k)) order.push_back(k);
  }
  const StateVector permuted = permute_factors(psi, shape, order);
  const std::size_t rest = shape.total() / kept_dim;
  Eigen::Map<const ComplexMatrix> m(permuted.data(), kept_dim, rest);
  return m * m.adjoint();
}

std::size_t SchmidtDecomposition::rank() const {
  return static_cast<std::size_t>(
      std::count_if(coefficients.begin(), coefficients.end(),
                    [](double c) { return c > tol::kRank; }));
}

SchmidtDecomposition schmidt_decompose(const StateVector& psi,
                                       const SystemShape& bipartition) {
  if (bipartition.size() != 2) {
    throw DomainError("schmidt_decompose: shape must have exactly two blocks");
  }
  if (static_cast<std::size_t>(psi.size()) != bipartition.total()) {
    throw DimensionError("schmidt_decompose: vector does not match shape");
  }
  if (!is_normalized(psi)) {
    throw DomainError("schmidt_decompose: state is not normalized");
  }
  const auto left_dim = static_cast<Eigen::Index>(bipartition.factor_dims[0]);
  const auto right_dim = static_cast<Eigen::Index>(bipartition.factor_dims[1]);
  Eigen::Map<const ComplexMatrix> m(psi.data(), left_dim, right_dim);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeThinU |
                                                Eigen::ComputeThinV);
  SchmidtDecomposition out;
  const auto& s = svd.singularValues();
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    out.coefficients.push_back(s(k));
    out.left.emplace_back(svd.matrixU().col(k));
    out.right.emplace_back(svd.matrixV().col(k).conjugate());
  }
  return out;
}

ContractionCheck is_contraction(const ComplexMatrix& x) {
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(x);
  const double sigma_max =
      svd.singularValues().size() > 0 ? svd.singularValues()(0) : 0.0;
  const ComplexMatrix gap =
      ComplexMatrix::Identity(x.cols(), x.cols()) - x.adjoint() * x;
  const double floor = x.cols() > 0 ? hermitian_eigenvalues(gap)(0) : 0.0;
  return {sigma_max <= 1.0 + tol::kNum && floor >= -tol::kNum, sigma_max};
}

BlochVector bloch_coordinates(const StateVector& psi) {
  if (psi.size() != 2) {
    throw DimensionError("bloch_coordinates: state is not a qubit");
  }
  if (!is_normalized(psi)) {
    throw DomainError("bloch_coordinates: state is not normalized");
  }
  const Complex coherence = std::conj(psi(0)) * psi(1);
  return {2.0 * coherence.real(), 2.0 * coherence.imag(),
          std::norm(psi(0)) - std::norm(psi(1))};
}

ComplexMatrix dagger(const ComplexMatrix& m) { return m.adjoint(); }

ComplexMatrix projector(const StateVector& psi) { return psi * psi.adjoint(); }

bool is_unitary(const ComplexMatrix& u, double tolerance) {
  if (u.rows() != u.cols()) return false;
  return max_abs_diff(u.adjoint() * u,
                      ComplexMatrix::Identity(u.rows(), u.cols())) <= tolerance;
}

bool is_normalized(const StateVector& psi, double tolerance) {
  return std::abs(psi.norm() - 1.0) <= tolerance;
}

RealVector hermitian_eigenvalues(const ComplexMatrix& h) {
  const Eigen::MatrixXcd sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(sym,
                                                         Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

double trace_distance(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
  return 0.5 * hermitian_eigenvalues(rho - sigma).cwiseAbs().sum();
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("max_abs_diff: shape mismatch");
  }
  return a.size() == 0 ? 0.0 : (a - b).cwiseAbs().maxCoeff();
}

StateVector canonical_phase(const StateVector& psi) {
  for (Eigen::Index i = 0; i < psi.size(); ++i) {
    if (std::abs(psi(i)) > tol::kNum) {
      return psi * (std::abs(psi(i)) / psi(i));
    }
  }
  return psi;
}

ComplexMatrix random_matrix(std::mt19937_64& rng, std::size_t rows,
                            std::size_t cols) {
  std::normal_distribution<double> gauss;
  ComplexMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    m.data()[i] = Complex(re, im);
  }
  return m;
}

StateVector random_state(std::mt19937_64& rng, std::size_t dim) {
  StateVector v = random_matrix(rng, dim, 1).col(0);
  return v / v.norm();
}

ComplexMatrix random_unitary(std::mt19937_64& rng, std::size_t dim) {
  const Eigen::MatrixXcd g = random_matrix(rng, dim, dim);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR();
  for (Eigen::Index k = 0; k < q.cols(); ++k) {
    const Complex d = r(k, k);
    if (std::abs(d) > 0) q.col(k) *= d / std::abs(d);
  }
  return q;
}

ComplexMatrix random_density(std::mt19937_64& rng, std::size_t dim) {
  const ComplexMatrix g = random_matrix(rng, dim, dim);
  ComplexMatrix rho = g * g.adjoint();
  return rho / rho.trace().real();
}

}  // namespace ontic
