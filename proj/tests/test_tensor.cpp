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

#include <gtest/gtest.h>

#include <cmath>

#include "ontic/error.hpp"
#include "ontic/tensor.hpp"
#include "support.hpp"

using namespace ontic;
using ontic::testing::kron_oracle;
using ontic::testing::partial_trace_oracle;

namespace {

StateVector ket(std::initializer_list<Complex> v) {
  StateVector out(v.size());
  std::size_t i = 0;
  for (Complex z : v) out(i++) = z;
  return out;
}

const double r = 1.0 / std::sqrt(2.0);

}  // namespace

TEST(TensorProduct, MatchesIndexLoops) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix a = random_matrix(rng, 1 + trial % 3, 2 + trial % 2);
    const ComplexMatrix b = random_matrix(rng, 2 + trial % 4, 1 + trial % 3);
    EXPECT_LT(max_abs_diff(tensor_product(a, b), kron_oracle(a, b)), 1e-14);
  }
}

TEST(TensorProduct, BasisKets) {
  const StateVector v = tensor_product(ket({1, 0}), ket({0, 1}));
  EXPECT_LT((v - ket({0, 1, 0, 0})).norm(), 1e-15);
}

TEST(TensorProduct, RejectsBeyondCap) {
  const ComplexMatrix a = ComplexMatrix::Identity(64, 64);
  EXPECT_THROW(tensor_product(a, a, 1024), DimensionError);
  EXPECT_NO_THROW(tensor_product(a, a, 4096));
}

TEST(PartialTrace, MatchesIndexSums) {
  std::mt19937_64 rng(2);
  const std::vector<std::size_t> dims{2, 3, 2};
  const SystemShape shape{dims};
  const ComplexMatrix rho = random_density(rng, 12);
  for (const std::vector<std::size_t>& keep :
       {std::vector<std::size_t>{0}, {1}, {2}, {0, 2}, {1, 2}, {0, 1, 2}}) {
    EXPECT_LT(max_abs_diff(partial_trace(rho, shape, keep),
                           partial_trace_oracle(rho, dims, keep)),
              1e-14);
  }
}

TEST(PartialTrace, BellMarginalIsMaximallyMixed) {
  const StateVector bell = ket({r, 0, 0, r});
  const std::vector<std::size_t> keep{0};
  const ComplexMatrix m = partial_trace(projector(bell), SystemShape{{2, 2}}, keep);
  EXPECT_LT(max_abs_diff(m, ComplexMatrix::Identity(2, 2) / 2.0), 1e-15);
}

TEST(PartialTrace, ProductStateKeepsFactor) {
  const StateVector plus = ket({r, r});
  const StateVector psi = tensor_product(ket({1, 0}), plus);
  const std::vector<std::size_t> keep{1};
  EXPECT_LT(max_abs_diff(partial_trace(projector(psi), SystemShape{{2, 2}}, keep),
                         projector(plus)),
            1e-15);
}

TEST(ReducedDensity, AgreesWithPartialTraceOfProjector) {
  std::mt19937_64 rng(3);
  const SystemShape shape{{2, 2, 3}};
  const StateVector psi = random_state(rng, 12);
  for (const std::vector<std::size_t>& keep :
       {std::vector<std::size_t>{2}, {0, 1}, {0, 2}, {1}}) {
    EXPECT_LT(max_abs_diff(reduced_density(psi, shape, keep),
                           partial_trace_oracle(projector(psi), shape.factor_dims, keep)),
              1e-13);
  }
}

TEST(PermuteFactors, SwapAndInverse) {
  std::mt19937_64 rng(4);
  const SystemShape shape{{2, 3, 2}};
  const StateVector psi = random_state(rng, 12);
  const std::vector<std::size_t> order{2, 0, 1};
  const StateVector moved = permute_factors(psi, shape, order);
  const SystemShape moved_shape{{2, 2, 3}};
  const std::vector<std::size_t> back{1, 2, 0};
  EXPECT_LT((permute_factors(moved, moved_shape, back) - psi).norm(), 1e-15);
  for (std::size_t i = 0; i < 12; ++i) {
    const auto d = ontic::testing::digits_of(i, shape.factor_dims);
    const std::size_t j = (d[2] * 2 + d[0]) * 3 + d[1];
    EXPECT_EQ(moved(j), psi(i));
  }
}

TEST(Schmidt, BellStateHasRankTwo) {
  const auto s = schmidt_decompose(ket({r, 0, 0, r}), SystemShape{{2, 2}});
  ASSERT_EQ(s.rank(), 2u);
  EXPECT_NEAR(s.coefficients[0], r, 1e-12);
  EXPECT_NEAR(s.coefficients[1], r, 1e-12);
}

TEST(Schmidt, ProductStateHasRankOne) {
  const StateVector psi = tensor_product(ket({1, 0}), ket({r, r}));
  const auto s = schmidt_decompose(psi, SystemShape{{2, 2}});
  EXPECT_EQ(s.rank(), 1u);
  EXPECT_NEAR(s.coefficients[0], 1.0, 1e-12);
}

TEST(Schmidt, CoefficientsMatchReducedSpectrumAndReconstruct) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const StateVector psi = random_state(rng, 6);
    const SystemShape shape{{2, 3}};
    const auto s = schmidt_decompose(psi, shape);
    const std::vector<std::size_t> keep{0};
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
        partial_trace_oracle(projector(psi), {2, 3}, keep));
    EXPECT_NEAR(s.coefficients[0] * s.coefficients[0], es.eigenvalues()(1), 1e-12);
    EXPECT_NEAR(s.coefficients[1] * s.coefficients[1], es.eigenvalues()(0), 1e-12);
    StateVector rebuilt = StateVector::Zero(6);
    for (std::size_t k = 0; k < s.coefficients.size(); ++k) {
      rebuilt += s.coefficients[k] * tensor_product(s.left[k], s.right[k]);
    }
    EXPECT_LT((rebuilt - psi).norm(), 1e-12);
  }
}

TEST(Contraction, Examples) {
  EXPECT_TRUE(is_contraction(ComplexMatrix::Identity(3, 3)).contraction);
  ComplexMatrix p = ComplexMatrix::Zero(2, 2);
  p(0, 0) = 1.0;
  EXPECT_TRUE(is_contraction(p).contraction);
  const ComplexMatrix big = 1.5 * ComplexMatrix::Identity(2, 2);
  const auto c = is_contraction(big);
  EXPECT_FALSE(c.contraction);
  EXPECT_NEAR(c.sigma_max, 1.5, 1e-12);
}

TEST(Bloch, CardinalStates) {
  const auto z = bloch_coordinates(ket({1, 0}));
  EXPECT_NEAR(z.z, 1.0, 1e-15);
  const auto x = bloch_coordinates(ket({r, r}));
  EXPECT_NEAR(x.x, 1.0, 1e-15);
  const auto y = bloch_coordinates(ket({r, Complex(0, r)}));
  EXPECT_NEAR(y.y, 1.0, 1e-15);
}

TEST(RandomGenerators, ProduceValidObjects) {
  std::mt19937_64 rng(6);
  for (std::size_t d : {2u, 3u, 5u}) {
    EXPECT_TRUE(is_unitary(random_unitary(rng, d)));
    EXPECT_TRUE(is_normalized(random_state(rng, d)));
    const ComplexMatrix rho = random_density(rng, d);
    EXPECT_NEAR(rho.trace().real(), 1.0, 1e-12);
    EXPECT_GT(hermitian_eigenvalues(rho)(0), 0.0);
  }
}

TEST(TraceDistance, OrthogonalAndEqualStates) {
  const ComplexMatrix a = projector(ket({1, 0}));
  const ComplexMatrix b = projector(ket({0, 1}));
  EXPECT_NEAR(trace_distance(a, b), 1.0, 1e-15);
  EXPECT_NEAR(trace_distance(a, a), 0.0, 1e-15);
}
