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

#include <complex>
#include <cstddef>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace ontic {

using Complex = std::complex<double>;
/// Dense, row-major complex matrix. Houses every operator in the library.
using ComplexMatrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using StateVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

namespace tol {
/// Algebraic identities.
inline constexpr double kNum = 1e-10;
/// Normalization of ontic state vectors.
inline constexpr double kNorm = 1e-9;
/// Schmidt coefficients at or below this count as zero.
inline constexpr double kRank = 1e-8;
/// Reduced states with purity within this of 1 are pure.
inline constexpr double kPure = 1e-8;
/// Trace-nonincreasing tests are rejected above sigma_max(sum K^dag K) = 1 + kTest.
inline constexpr double kTest = 1e-8;
}  // namespace tol

/// Largest row or column count any operator may reach (12 qubits).
inline constexpr std::size_t kDefaultMaxDim = 4096;

/// Local dimensions of the tensor factors of a composite system, most
/// significant factor first.
struct SystemShape {
  std::vector<std::size_t> factor_dims;

  std::size_t total() const;
  std::size_t size() const { return factor_dims.size(); }
};

/// Kronecker product. Throws DimensionError if the result would exceed
/// max_dim rows or columns.
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b,
                             std::size_t max_dim = kDefaultMaxDim);
StateVector tensor_product(const StateVector& a, const StateVector& b);

/// Traces out every factor not listed in `keep`. Kept factors retain their
/// relative order.
ComplexMatrix partial_trace(const ComplexMatrix& rho, const SystemShape& shape,
                            std::span<const std::size_t> keep);

/// Reduced density matrix of a pure state on the factors in `keep`, computed
/// without forming the full projector.
ComplexMatrix reduced_density(const StateVector& psi, const SystemShape& shape,
                              std::span<const std::size_t> keep);

/// Reorders tensor factors: factor k of the result is factor order[k] of psi.
StateVector permute_factors(const StateVector& psi, const SystemShape& shape,
                            std::span<const std::size_t> order);

struct SchmidtDecomposition {
  /// Nonnegative, descending.
  std::vector<double> coefficients;
  std::vector<StateVector> left;
  std::vector<StateVector> right;

  /// Number of coefficients above tol::kRank.
  std::size_t rank() const;
};

/// Schmidt decomposition across a two-block shape.
SchmidtDecomposition schmidt_decompose(const StateVector& psi,
                                       const SystemShape& bipartition);

struct ContractionCheck {
  bool contraction;
  double sigma_max;
};

/// Largest singular value, plus X^dag X <= I checked via the eigenvalue floor
/// of I - X^dag X.
ContractionCheck is_contraction(const ComplexMatrix& x);

struct BlochVector {
  double x;
  double y;
  double z;
};

BlochVector bloch_coordinates(const StateVector& psi);

// Helpers shared by the other modules.

ComplexMatrix dagger(const ComplexMatrix& m);
ComplexMatrix projector(const StateVector& psi);
bool is_unitary(const ComplexMatrix& u, double tolerance = tol::kNum);
bool is_normalized(const StateVector& psi, double tolerance = tol::kNorm);
double trace_distance(const ComplexMatrix& rho, const ComplexMatrix& sigma);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
/// Eigenvalues of a Hermitian matrix, ascending.
RealVector hermitian_eigenvalues(const ComplexMatrix& h);
/// Scales so that the first amplitude with modulus above tol::kNum is real and
/// nonnegative. Used only when comparing states.
StateVector canonical_phase(const StateVector& psi);

/// Haar-random unit vector (normalized Gaussian amplitudes).
StateVector random_state(std::mt19937_64& rng, std::size_t dim);
/// Haar-random unitary via QR of a Ginibre matrix with phase correction.
ComplexMatrix random_unitary(std::mt19937_64& rng, std::size_t dim);
/// Random full-rank density matrix (normalized Wishart).
ComplexMatrix random_density(std::mt19937_64& rng, std::size_t dim);
ComplexMatrix random_matrix(std::mt19937_64& rng, std::size_t rows,
                            std::size_t cols);

}  // namespace ontic
