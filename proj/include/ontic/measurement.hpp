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

// Observation tests on a single system: POVMs, SIC frames, tomography and the
// store-and-recall memory model.

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ontic/json_codec.hpp"
#include "ontic/tensor.hpp"

namespace ontic {

/// Effects 0 <= E_i <= I summing to the identity.
class Povm {
 public:
  /// Throws DomainError unless the effects form a valid POVM within tolerance.
  explicit Povm(std::vector<ComplexMatrix> effects, double tolerance = tol::kNum);

  const std::vector<ComplexMatrix>& effects() const { return effects_; }
  std::size_t dim() const { return dim_; }
  std::size_t size() const { return effects_.size(); }

  /// Tr(rho E_i) for every outcome, clipped at zero.
  std::vector<double> probabilities(const ComplexMatrix& rho) const;

 private:
  std::vector<ComplexMatrix> effects_;
  std::size_t dim_ = 0;
};

struct InfoCompleteness {
  bool complete = false;
  std::size_t span = 0;
};

/// Dimension of the real span of the effects, compared with d^2.
InfoCompleteness is_infocomplete(const Povm& povm);

struct SicPovm {
  std::size_t dim = 0;
  /// d^2 unit vectors with |<psi_j|psi_k>|^2 = 1/(d+1) for j != k.
  std::vector<StateVector> states;
  /// |psi_j><psi_j| / d.
  Povm povm;
};

/// Tetrahedral frame for d = 2, Weyl-Heisenberg orbit of a stored fiducial
/// for d = 3. The overlaps are checked before returning. Throws DomainError
/// for other dimensions.
SicPovm build_sic(std::size_t d);

/// Haar-uniform direction on the sphere.
Eigen::Vector3d random_direction(std::mt19937_64& rng);
/// Projectors (I +/- n.sigma)/2.
Povm vn_qubit_along(const Eigen::Vector3d& direction);
Povm random_vn_qubit(std::mt19937_64& rng);

/// Qubit state with Bloch vector n (unit length).
StateVector qubit_from_direction(const Eigen::Vector3d& direction);

/// Outcome counts of n independent shots.
std::vector<std::size_t> simulate_measurement(const Povm& povm,
                                              const ComplexMatrix& rho,
                                              std::size_t shots,
                                              std::mt19937_64& rng);

/// {"0": count, "1": count, ...}
Json histogram_to_json(const std::vector<std::size_t>& counts);

/// Clips negative eigenvalues and renormalizes the trace to one.
ComplexMatrix project_to_density(const ComplexMatrix& h);

struct TomographyResult {
  ComplexMatrix estimate;
  std::size_t sample_count = 0;
  /// Least-squares residual ||A x - f||.
  double residual = 0.0;
};

/// Least-squares inversion of outcome frequencies onto the effect frame,
/// projected back to a density matrix. Throws DomainError if the POVM is not
/// infocomplete.
TomographyResult tomography_from_probabilities(const Povm& povm,
                                               const std::vector<double>& freqs,
                                               std::size_t sample_count = 0);
TomographyResult tomography_linear(const Povm& povm,
                                   const std::vector<std::size_t>& counts);

/// R fresh copies of psi measured with `povm`, then tomography.
TomographyResult attention_repetition(const StateVector& psi, std::size_t repeats,
                                      const Povm& povm, std::mt19937_64& rng);

struct Fraction {
  std::uint64_t num = 0;
  std::uint64_t den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// (M+1)/(M+d), reduced. Throws DomainError for M < 1 or d < 2.
Fraction recall_fidelity_bound(std::size_t copies, std::size_t d);

enum class RecallStrategy { kOptimalCovariantQubit, kSicEstimate, kRandomVnRepeat };

std::string to_string(RecallStrategy s);
/// Throws DomainError for unknown names.
RecallStrategy recall_strategy_from_string(const std::string& name);
bool strategy_supports(RecallStrategy s, std::size_t d);

/// Near-uniform Fibonacci lattice on the Bloch sphere.
std::vector<Eigen::Vector3d> fibonacci_mesh(std::size_t points);

/// max |F - I| where F = (M+1)/N sum_i |n_i><n_i|^{(x)M} restricted to the
/// symmetric subspace. Zero for an exact covariant frame.
double mesh_frame_deviation(const std::vector<Eigen::Vector3d>& mesh,
                            std::size_t copies);

inline constexpr std::size_t kMeshPoints = 4000;

struct RecallResult {
  StateVector recalled;
  double fidelity = 0.0;
};

/// Measures psi^{(x)M} with the chosen strategy and re-prepares an estimate.
/// Throws DomainError for unsupported strategy/dimension pairs.
RecallResult store_recall_cycle(const StateVector& psi, std::size_t copies,
                                RecallStrategy strategy, std::mt19937_64& rng);

}  // namespace ontic
