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
#include <numbers>
#include <numeric>

#include <fmt/format.h>

#include "ontic/error.hpp"
#include "ontic/measurement.hpp"

namespace ontic {

namespace {

constexpr double kSic = 1e-9;

// Hermitian basis: |j><j|, |j><k| + |k><j|, -i|j><k| + i|k><j| (j < k).
std::vector<ComplexMatrix> hermitian_basis(std::size_t d) {
  std::vector<ComplexMatrix> basis;
  for (std::size_t j = 0; j < d; ++j) {
    ComplexMatrix g = ComplexMatrix::Zero(d, d);
    g(j, j) = 1.0;
    basis.push_back(std::move(g));
  }
  const Complex i(0.0, 1.0);
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t k = j + 1; k < d; ++k) {
      ComplexMatrix x = ComplexMatrix::Zero(d, d);
      x(j, k) = 1.0;
      x(k, j) = 1.0;
      basis.push_back(std::move(x));
      ComplexMatrix y = ComplexMatrix::Zero(d, d);
      y(j, k) = -i;
      y(k, j) = i;
      basis.push_back(std::move(y));
    }
  }
  return basis;
}

Eigen::MatrixXd frame_matrix(const Povm& povm,
                             const std::vector<ComplexMatrix>& basis) {
  Eigen::MatrixXd a(povm.size(), basis.size());
  for (std::size_t r = 0; r < povm.size(); ++r) {
    for (std::size_t c = 0; c < basis.size(); ++c) {
      a(r, c) = (povm.effects()[r] * basis[c]).trace().real();
    }
  }
  return a;
}

StateVector leading_eigenvector(const ComplexMatrix& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  return es.eigenvectors().col(h.rows() - 1);
}

std::size_t sample_index(const std::vector<double>& cumulative,
                         std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uniform(0.0, cumulative.back());
  const double u = uniform(rng);
  const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
  return std::min<std::size_t>(it - cumulative.begin(), cumulative.size() - 1);
}

const std::vector<Eigen::Vector3d>& default_mesh() {
  static const std::vector<Eigen::Vector3d> mesh = fibonacci_mesh(kMeshPoints);
  return mesh;
}

RecallResult recall_optimal(const StateVector& psi, std::size_t copies,
                            std::mt19937_64& rng) {
  const BlochVector b = bloch_coordinates(psi);
  const Eigen::Vector3d r(b.x, b.y, b.z);
  const auto& mesh = default_mesh();
  std::vector<double> cumulative(mesh.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < mesh.size(); ++i) {
    const double overlap = 0.5 * (1.0 + mesh[i].dot(r));
    double w = 1.0;
    for (std::size_t m = 0; m < copies; ++m) w *= overlap;
    acc += w;
    cumulative[i] = acc;
  }
  RecallResult out;
  out.recalled = qubit_from_direction(mesh[sample_index(cumulative, rng)]);
  out.fidelity = std::norm(out.recalled.dot(psi));
  return out;
}

const SicPovm& cached_sic(std::size_t d) {
  static const SicPovm qubit = build_sic(2);
  static const SicPovm qutrit = build_sic(3);
  return d == 2 ? qubit : qutrit;
}

RecallResult recall_sic(const StateVector& psi, std::size_t copies,
                        std::mt19937_64& rng) {
  const std::size_t d = psi.size();
  const SicPovm& sic = cached_sic(d);
  std::vector<double> cumulative(sic.states.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < sic.states.size(); ++i) {
    acc += std::norm(sic.states[i].dot(psi));
    cumulative[i] = acc;
  }
  ComplexMatrix estimate = ComplexMatrix::Zero(d, d);
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  for (std::size_t m = 0; m < copies; ++m) {
    const std::size_t i = sample_index(cumulative, rng);
    estimate += static_cast<double>(d + 1) * projector(sic.states[i]) - id;
  }
  estimate /= static_cast<double>(copies);
  RecallResult out;
  out.recalled = leading_eigenvector(project_to_density(estimate));
  out.fidelity = std::norm(out.recalled.dot(psi));
  return out;
}

RecallResult recall_random_vn(const StateVector& psi, std::size_t copies,
                              std::mt19937_64& rng) {
  const std::size_t d = psi.size();
  ComplexMatrix estimate = ComplexMatrix::Zero(d, d);
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  std::vector<double> cumulative(d);
  for (std::size_t m = 0; m < copies; ++m) {
    const ComplexMatrix u = random_unitary(rng, d);
    double acc = 0.0;
    for (std::size_t b = 0; b < d; ++b) {
      acc += std::norm(StateVector(u.col(b)).dot(psi));
      cumulative[b] = acc;
    }
    const StateVector basis = u.col(sample_index(cumulative, rng));
    estimate += static_cast<double>(d + 1) * projector(basis) - id;
  }
  estimate /= static_cast<double>(copies);
  RecallResult out;
  out.recalled = leading_eigenvector(project_to_density(estimate));
  out.fidelity = std::norm(out.recalled.dot(psi));
  return out;
}

}  // namespace

Povm::Povm(std::vector<ComplexMatrix> effects, double tolerance)
    : effects_(std::move(effects)) {
  if (effects_.empty()) throw DomainError("POVM has no effects");
  dim_ = effects_.front().rows();
  ComplexMatrix sum = ComplexMatrix::Zero(dim_, dim_);
  for (std::size_t i = 0; i < effects_.size(); ++i) {
    const ComplexMatrix& e = effects_[i];
    if (static_cast<std::size_t>(e.rows()) != dim_ ||
        static_cast<std::size_t>(e.cols()) != dim_) {
      throw DimensionError(fmt::format("effect {} is {}x{}, expected {}x{}", i,
                                       e.rows(), e.cols(), dim_, dim_));
    }
    if (max_abs_diff(e, dagger(e)) > tolerance) {
      throw DomainError(fmt::format("effect {} is not Hermitian", i));
    }
    const RealVector ev = hermitian_eigenvalues(e);
    if (ev(0) < -tolerance || ev(ev.size() - 1) > 1.0 + tolerance) {
      throw DomainError(fmt::format("effect {} is not between 0 and I", i));
    }
    sum += e;
  }
  if (max_abs_diff(sum, ComplexMatrix::Identity(dim_, dim_)) > tolerance) {
    throw DomainError("effects do not sum to the identity");
  }
}

std::vector<double> Povm::probabilities(const ComplexMatrix& rho) const {
  std::vector<double> p(effects_.size());
  for (std::size_t i = 0; i < effects_.size(); ++i) {
    p[i] = std::max(0.0, (rho * effects_[i]).trace().real());
  }
  return p;
}

InfoCompleteness is_infocomplete(const Povm& povm) {
  const std::size_t d = povm.dim();
  const Eigen::MatrixXd a = frame_matrix(povm, hermitian_basis(d));
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const auto& s = svd.singularValues();
  std::size_t span = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > tol::kRank * std::max(1.0, s(0))) ++span;
  }
  return InfoCompleteness{span == d * d, span};
}

SicPovm build_sic(std::size_t d) {
  std::vector<StateVector> states;
  if (d == 2) {
    const double s = std::sqrt(2.0);
    const std::vector<Eigen::Vector3d> dirs{
        {0.0, 0.0, 1.0},
        {2.0 * s / 3.0, 0.0, -1.0 / 3.0},
        {-s / 3.0, std::sqrt(2.0 / 3.0), -1.0 / 3.0},
        {-s / 3.0, -std::sqrt(2.0 / 3.0), -1.0 / 3.0}};
    for (const auto& n : dirs) states.push_back(qubit_from_direction(n));
  } else if (d == 3) {
    StateVector fiducial(3);
    fiducial << 0.0, 1.0, -1.0;
    fiducial /= std::sqrt(2.0);
    const Complex omega = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
    for (std::size_t a = 0; a < 3; ++a) {
      for (std::size_t b = 0; b < 3; ++b) {
        StateVector v(3);
        for (std::size_t j = 0; j < 3; ++j) {
          v((j + a) % 3) = std::pow(omega, static_cast<double>(b * j)) * fiducial(j);
        }
        states.push_back(std::move(v));
      }
    }
  } else {
    throw DomainError(fmt::format("no SIC available for dimension {}", d));
  }
  const double off = 1.0 / static_cast<double>(d + 1);
  for (std::size_t j = 0; j < states.size(); ++j) {
    for (std::size_t k = 0; k < states.size(); ++k) {
      const double f = std::norm(states[j].dot(states[k]));
      if (std::abs(f - (j == k ? 1.0 : off)) > kSic) {
        throw DomainError(fmt::format("SIC overlap ({}, {}) is {:.17g}", j, k, f));
      }
    }
  }
  std::vector<ComplexMatrix> effects;
  for (const auto& s : states) effects.push_back(projector(s) / static_cast<double>(d));
  return SicPovm{d, std::move(states), Povm(std::move(effects), kSic)};
}

Eigen::Vector3d random_direction(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::Vector3d n;
  do {
    n = Eigen::Vector3d(g(rng), g(rng), g(rng));
  } while (n.norm() < 1e-12);
  return n.normalized();
}

StateVector qubit_from_direction(const Eigen::Vector3d& direction) {
  const Eigen::Vector3d n = direction.normalized();
  const double theta = std::acos(std::clamp(n.z(), -1.0, 1.0));
  const double phi = std::atan2(n.y(), n.x());
  StateVector v(2);
  v(0) = std::cos(theta / 2.0);
  v(1) = std::polar(std::sin(theta / 2.0), phi);
  return v;
}

Povm vn_qubit_along(const Eigen::Vector3d& direction) {
  const StateVector up = qubit_from_direction(direction);
  const StateVector down = qubit_from_direction(-direction);
  return Povm({projector(up), projector(down)});
}

Povm random_vn_qubit(std::mt19937_64& rng) {
  return vn_qubit_along(random_direction(rng));
}

std::vector<std::size_t> simulate_measurement(const Povm& povm,
                                              const ComplexMatrix& rho,
                                              std::size_t shots,
                                              std::mt19937_64& rng) {
  if (static_cast<std::size_t>(rho.rows()) != povm.dim()) {
    throw DimensionError("state and POVM dimensions differ");
  }
  const auto p = povm.probabilities(rho);
  std::vector<double> cumulative(p.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    acc += p[i];
    cumulative[i] = acc;
  }
  std::vector<std::size_t> counts(p.size(), 0);
  for (std::size_t s = 0; s < shots; ++s) ++counts[sample_index(cumulative, rng)];
  return counts;
}

Json histogram_to_json(const std::vector<std::size_t>& counts) {
  Json out = Json::object();
  for (std::size_t i = 0; i < counts.size(); ++i) out[std::to_string(i)] = counts[i];
  return out;
}

ComplexMatrix project_to_density(const ComplexMatrix& h) {
  const std::size_t d = h.rows();
  const ComplexMatrix sym = 0.5 * (h + dagger(h));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(sym);
  RealVector ev = es.eigenvalues().cwiseMax(0.0);
  const double total = ev.sum();
  if (total <= tol::kNum) {
    return ComplexMatrix::Identity(d, d) / static_cast<double>(d);
  }
  ev /= total;
  const Eigen::MatrixXcd& v = es.eigenvectors();
  return v * ev.cast<Complex>().asDiagonal() * v.adjoint();
}

TomographyResult tomography_from_probabilities(const Povm& povm,
                                               const std::vector<double>& freqs,
                                               std::size_t sample_count) {
  if (freqs.size() != povm.size()) {
    throw DimensionError("one frequency per effect is required");
  }
  const InfoCompleteness ic = is_infocomplete(povm);
  if (!ic.complete) {
    throw DomainError(fmt::format(
        "POVM spans {} of {} dimensions; tomography needs an infocomplete test",
        ic.span, povm.dim() * povm.dim()));
  }
  const auto basis = hermitian_basis(povm.dim());
  const Eigen::MatrixXd a = frame_matrix(povm, basis);
  const Eigen::VectorXd f = Eigen::Map<const Eigen::VectorXd>(freqs.data(), freqs.size());
  const Eigen::VectorXd x = a.completeOrthogonalDecomposition().solve(f);
  ComplexMatrix raw = ComplexMatrix::Zero(povm.dim(), povm.dim());
  for (std::size_t k = 0; k < basis.size(); ++k) raw += x(k) * basis[k];
  TomographyResult out;
  out.estimate = project_to_density(raw);
  out.sample_count = sample_count;
  out.residual = (a * x - f).norm();
  return out;
}

TomographyResult tomography_linear(const Povm& povm,
                                   const std::vector<std::size_t>& counts) {
  std::size_t total = 0;
  for (std::size_t c : counts) total += c;
  if (total == 0) throw DomainError("histogram is empty");
  std::vector<double> freqs(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    freqs[i] = static_cast<double>(counts[i]) / static_cast<double>(total);
  }
  return tomography_from_probabilities(povm, freqs, total);
}

TomographyResult attention_repetition(const StateVector& psi, std::size_t repeats,
                                      const Povm& povm, std::mt19937_64& rng) {
  if (repeats < 1) throw DomainError("at least one repetition is required");
  return tomography_linear(povm, simulate_measurement(povm, projector(psi), repeats, rng));
}

Fraction recall_fidelity_bound(std::size_t copies, std::size_t d) {
  if (copies < 1) throw DomainError("at least one copy is required");
  if (d < 2) throw DomainError("dimension must be at least 2");
  std::uint64_t num = copies + 1;
  std::uint64_t den = copies + d;
  const std::uint64_t g = std::gcd(num, den);
  return Fraction{num / g, den / g};
}

std::string to_string(RecallStrategy s) {
  switch (s) {
    case RecallStrategy::kOptimalCovariantQubit:
      return "optimal_covariant_qubit";
    case RecallStrategy::kSicEstimate:
      return "sic_estimate";
    case RecallStrategy::kRandomVnRepeat:
      return "random_vn_repeat";
  }
  return "";
}

RecallStrategy recall_strategy_from_string(const std::string& name) {
  for (auto s : {RecallStrategy::kOptimalCovariantQubit, RecallStrategy::kSicEstimate,
                 RecallStrategy::kRandomVnRepeat}) {
    if (to_string(s) == name) return s;
  }
  throw DomainError(fmt::format("unknown strategy '{}'", name));
}

bool strategy_supports(RecallStrategy s, std::size_t d) {
  switch (s) {
    case RecallStrategy::kOptimalCovariantQubit:
      return d == 2;
    case RecallStrategy::kSicEstimate:
      return d == 2 || d == 3;
    case RecallStrategy::kRandomVnRepeat:
      return d >= 2;
  }
  return false;
}

std::vector<Eigen::Vector3d> fibonacci_mesh(std::size_t points) {
  std::vector<Eigen::Vector3d> mesh;
  mesh.reserve(points);
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (std::size_t i = 0; i < points; ++i) {
    const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(points);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * static_cast<double>(i);
    mesh.emplace_back(r * std::cos(phi), r * std::sin(phi), z);
  }
  return mesh;
}

double mesh_frame_deviation(const std::vector<Eigen::Vector3d>& mesh,
                            std::size_t copies) {
  const std::size_t m = copies;
  std::vector<double> binom(m + 1, 1.0);
  for (std::size_t k = 1; k <= m; ++k) {
    binom[k] = binom[k - 1] * static_cast<double>(m - k + 1) / static_cast<double>(k);
  }
  ComplexMatrix frame = ComplexMatrix::Zero(m + 1, m + 1);
  StateVector c(m + 1);
  for (const auto& n : mesh) {
    const StateVector q = qubit_from_direction(n);
    for (std::size_t k = 0; k <= m; ++k) {
      c(k) = std::sqrt(binom[k]) * std::pow(q(0), static_cast<double>(m - k)) *
             std::pow(q(1), static_cast<double>(k));
    }
    frame += c * c.adjoint();
  }
  frame *= static_cast<double>(m + 1) / static_cast<double>(mesh.size());
  return max_abs_diff(frame, ComplexMatrix::Identity(m + 1, m + 1));
}

RecallResult store_recall_cycle(const StateVector& psi, std::size_t copies,
                                RecallStrategy strategy, std::mt19937_64& rng) {
  const std::size_t d = psi.size();
  if (!strategy_supports(strategy, d)) {
    throw DomainError(fmt::format("{} does not support dimension {}",
                                  to_string(strategy), d));
  }
  if (copies < 1) throw DomainError("at least one copy is required");
  if (!is_normalized(psi)) throw DomainError("state is not normalized");
  switch (strategy) {
    case RecallStrategy::kOptimalCovariantQubit:
      return recall_optimal(psi, copies, rng);
    case RecallStrategy::kSicEstimate:
      return recall_sic(psi, copies, rng);
    case RecallStrategy::kRandomVnRepeat:
      return recall_random_vn(psi, copies, rng);
  }
  return {};
}

}  // namespace ontic
