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

#include "ontic/quantum.hpp"

#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "ontic/error.hpp"

namespace ontic {

Transformation make_transformation(std::vector<ComplexMatrix> kraus) {
  if (kraus.empty()) throw DomainError("transformation needs an operator");
  Transformation t;
  t.input.factor_dims = {static_cast<std::size_t>(kraus.front().cols())};
  t.output.factor_dims = {static_cast<std::size_t>(kraus.front().rows())};
  t.kraus = std::move(kraus);
  check_signature(t);
  return t;
}

void check_signature(const Transformation& t) {
  if (t.kraus.empty()) throw DomainError("transformation has no operators");
  for (const auto& k : t.kraus) {
    if (static_cast<std::size_t>(k.rows()) != t.out_dim() ||
        static_cast<std::size_t>(k.cols()) != t.in_dim()) {
      throw DimensionError(fmt::format(
          "Kraus operator is {}x{} but the signature is {} -> {}", k.rows(),
          k.cols(), t.in_dim(), t.out_dim()));
    }
  }
}

Transformation compose_sequential(const Transformation& first,
                                  const Transformation& second) {
  check_signature(first);
  check_signature(second);
  if (first.output.factor_dims != second.input.factor_dims) {
    throw DimensionError("sequential composition: output of the first "
                         "transformation does not match input of the second");
  }
  Transformation out;
  out.input = first.input;
  out.output = second.output;
  for (const auto& k2 : second.kraus) {
    for (const auto& k1 : first.kraus) out.kraus.push_back(k2 * k1);
  }
  return out;
}

Transformation compose_parallel(const Transformation& a,
                                const Transformation& b, std::size_t max_dim) {
  check_signature(a);
  check_signature(b);
  Transformation out;
  out.input = a.input;
  out.output = a.output;
  out.input.factor_dims.insert(out.input.factor_dims.end(),
                               b.input.factor_dims.begin(),
                               b.input.factor_dims.end());
  out.output.factor_dims.insert(out.output.factor_dims.end(),
                                b.output.factor_dims.begin(),
                                b.output.factor_dims.end());
  for (const auto& ka : a.kraus) {
    for (const auto& kb : b.kraus) {
      out.kraus.push_back(tensor_product(ka, kb, max_dim));
    }
  }
  return out;
}

ComplexMatrix apply_channel(const Transformation& t, const ComplexMatrix& rho) {
  check_signature(t);
  if (static_cast<std::size_t>(rho.rows()) != t.in_dim() ||
      rho.rows() != rho.cols()) {
    throw DimensionError("apply_channel: state does not match input");
  }
  ComplexMatrix out = ComplexMatrix::Zero(t.out_dim(), t.out_dim());
  for (const auto& k : t.kraus) out += k * rho * k.adjoint();
  return out;
}

StateVector apply_atomic(const Transformation& t, const StateVector& psi) {
  if (!t.atomic()) {
    throw DomainError(fmt::format(
        "apply_atomic: transformation has {} Kraus operators", t.kraus.size()));
  }
  check_signature(t);
  if (static_cast<std::size_t>(psi.size()) != t.in_dim()) {
    throw DimensionError("apply_atomic: state does not match input");
  }
  return t.kraus.front() * psi;
}

ComplexMatrix effect_sum(const std::vector<ComplexMatrix>& kraus) {
  if (kraus.empty()) return {};
  ComplexMatrix sum = ComplexMatrix::Zero(kraus.front().cols(),
                                          kraus.front().cols());
  for (const auto& k : kraus) sum += k.adjoint() * k;
  return sum;
}

bool is_trace_nonincreasing(const std::vector<ComplexMatrix>& kraus,
                            double tolerance) {
  if (kraus.empty()) return true;
  return hermitian_eigenvalues(effect_sum(kraus)).maxCoeff() <= 1.0 + tolerance;
}

bool is_trace_preserving(const std::vector<ComplexMatrix>& kraus,
                         double tolerance) {
  if (kraus.empty()) return false;
  const ComplexMatrix sum = effect_sum(kraus);
  return max_abs_diff(sum, ComplexMatrix::Identity(sum.rows(), sum.cols())) <=
         tolerance;
}

namespace {

SystemShape shape_of(const Circuit& circuit,
                     const std::vector<std::string>& systems) {
  SystemShape shape;
  for (const auto& s : systems) shape.factor_dims.push_back(circuit.dim_of(s));
  return shape;
}

}  // namespace

Transformation event_transformation(const Circuit& circuit, const Node& node,
                                    std::size_t event) {
  Transformation t;
  t.input = shape_of(circuit, node.inputs);
  t.output = shape_of(circuit, node.outputs);
  t.kraus = node.events.at(event).kraus;
  check_signature(t);
  return t;
}

Transformation epistemic_of(const Circuit& circuit, const Node& test,
                            const std::string& condition_key) {
  std::vector<std::size_t> subset(test.events.size());
  std::iota(subset.begin(), subset.end(), std::size_t{0});
  if (test.condition) {
    const auto it = test.condition->map.find(condition_key);
    if (it == test.condition->map.end()) {
      throw DomainError(fmt::format("node {}: condition value '{}' not mapped",
                                    test.label, condition_key));
    }
    subset = it->second;
  }
  Transformation t;
  t.input = shape_of(circuit, test.inputs);
  t.output = shape_of(circuit, test.outputs);
  for (std::size_t e : subset) {
    const auto& ks = test.events.at(e).kraus;
    t.kraus.insert(t.kraus.end(), ks.begin(), ks.end());
  }
  check_signature(t);
  return t;
}

double born_probability(const Transformation& preparation) {
  check_signature(preparation);
  if (preparation.in_dim() != 1) {
    throw DomainError("born_probability: input system is not trivial");
  }
  const ComplexMatrix one = ComplexMatrix::Identity(1, 1);
  return apply_channel(preparation, one).trace().real();
}

KrausSet complete_with_discard(const KrausSet& set) {
  if (set.operators.empty()) throw DomainError("empty Kraus set");
  if (set.deterministic()) return set;
  const ComplexMatrix sum = effect_sum(set.operators);
  const Eigen::MatrixXcd gap =
      Eigen::MatrixXcd::Identity(sum.rows(), sum.cols()) - sum;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
      0.5 * (gap + gap.adjoint()));
  if (solver.eigenvalues().minCoeff() < -tol::kTest) {
    throw DomainError("complete_with_discard: set is not trace-nonincreasing");
  }
  const Eigen::VectorXd root =
      solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  KrausSet out = set;
  out.operators.push_back(solver.eigenvectors() * root.asDiagonal() *
                          solver.eigenvectors().adjoint());
  out.labels.resize(set.operators.size());
  out.labels.push_back("discard");
  return out;
}

Dilation dilate(const KrausSet& set) {
  if (set.operators.empty()) throw DomainError("dilate: empty Kraus set");
  const auto d = static_cast<std::size_t>(set.operators.front().cols());
  for (const auto& k : set.operators) {
    if (static_cast<std::size_t>(k.rows()) != d ||
        static_cast<std::size_t>(k.cols()) != d) {
      throw DimensionError("dilate: operators must be square and equal-sized");
    }
  }
  if (!set.deterministic(tol::kTest)) {
    throw DomainError("dilate: test is not trace-preserving; pad it with "
                      "complete_with_discard first");
  }
  const std::size_t n = set.operators.size();
  const std::size_t total = d * n;

  // Isometry |a> -> sum_i K_i|a> (x) |i>, system factor first.
  Eigen::MatrixXcd isometry = Eigen::MatrixXcd::Zero(total, d);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t b = 0; b < d; ++b) {
      for (std::size_t a = 0; a < d; ++a) {
        isometry(b * n + i, a) = set.operators[i](b, a);
      }
    }
  }
  // Householder QR of the isometry: trailing columns of Q span its orthogonal
  // complement.
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(isometry);
  const Eigen::MatrixXcd q = qr.householderQ();

  Dilation out;
  out.system_dim = d;
  out.ancilla_dim = n;
  out.unitary = ComplexMatrix::Zero(total, total);
  std::size_t next = d;
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t col = a * n + j;
      if (j == 0) {
        out.unitary.col(col) = isometry.col(a);
      } else {
        out.unitary.col(col) = q.col(next++);
      }
    }
  }
  out.ancilla_state = StateVector::Zero(n);
  out.ancilla_state(0) = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    ComplexMatrix p = ComplexMatrix::Zero(n, n);
    p(i, i) = 1.0;
    out.projectors.push_back(std::move(p));
  }
  return out;
}

ComplexMatrix dilation_branch(const Dilation& dilation, const ComplexMatrix& rho,
                              std::size_t outcome) {
  const ComplexMatrix joint = tensor_product(
      rho, projector(dilation.ancilla_state), dilation.unitary.rows());
  const ComplexMatrix evolved =
      dilation.unitary * joint * dilation.unitary.adjoint();
  const ComplexMatrix readout = tensor_product(
      ComplexMatrix::Identity(dilation.system_dim, dilation.system_dim),
      dilation.projectors.at(outcome), dilation.unitary.rows());
  const SystemShape shape{{dilation.system_dim, dilation.ancilla_dim}};
  const std::size_t keep[] = {0};
  return partial_trace(evolved * readout, shape, keep);
}

double holevo_limit(const SystemShape& shape) {
  return std::log2(static_cast<double>(shape.total()));
}

}  // namespace ontic
