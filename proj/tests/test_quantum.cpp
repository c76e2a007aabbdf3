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
#include "ontic/quantum.hpp"
#include "support.hpp"

using namespace ontic;

namespace {

ComplexMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
  ComplexMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

const double r = 1.0 / std::sqrt(2.0);

}  // namespace

TEST(Compose, SequentialProductsInOrder) {
  const auto h = make_transformation({mat2(r, r, r, -r)});
  const auto x = make_transformation({mat2(0, 1, 1, 0)});
  const auto hx = compose_sequential(x, h);
  ASSERT_EQ(hx.kraus.size(), 1u);
  EXPECT_LT(max_abs_diff(hx.kraus[0], h.kraus[0] * x.kraus[0]), 1e-15);

  std::mt19937_64 rng(21);
  const auto a = make_transformation(ontic::testing::random_test(rng, 2, 2, 2));
  const auto b = make_transformation(ontic::testing::random_test(rng, 2, 2, 3));
  const auto ab = compose_sequential(a, b);
  EXPECT_EQ(ab.kraus.size(), 6u);
  const ComplexMatrix rho = random_density(rng, 2);
  EXPECT_LT(max_abs_diff(apply_channel(ab, rho), apply_channel(b, apply_channel(a, rho))),
            1e-13);
}

TEST(Compose, ParallelIsKronecker) {
  std::mt19937_64 rng(22);
  const auto a = make_transformation(ontic::testing::random_test(rng, 2, 3, 2));
  const auto b = make_transformation(ontic::testing::random_test(rng, 3, 2, 1));
  const auto ab = compose_parallel(a, b);
  EXPECT_EQ(ab.in_dim(), 6u);
  EXPECT_EQ(ab.out_dim(), 6u);
  EXPECT_EQ(ab.input.factor_dims, (std::vector<std::size_t>{2, 3}));
  for (std::size_t i = 0; i < a.kraus.size(); ++i) {
    for (std::size_t j = 0; j < b.kraus.size(); ++j) {
      EXPECT_LT(max_abs_diff(ab.kraus[i * b.kraus.size() + j],
                             ontic::testing::kron_oracle(a.kraus[i], b.kraus[j])),
                1e-15);
    }
  }
  EXPECT_THROW(compose_parallel(a, b, 4), DimensionError);
}

TEST(Compose, SignatureMismatch) {
  const auto a = make_transformation({ComplexMatrix::Identity(2, 2)});
  const auto b = make_transformation({ComplexMatrix::Identity(3, 3)});
  EXPECT_THROW(compose_sequential(a, b), DimensionError);
}

TEST(Atomic, PreservesPurity) {
  std::mt19937_64 rng(23);
  const auto ops = ontic::testing::random_test(rng, 3, 3, 2);
  const auto t = make_transformation({ops[0]});
  const StateVector psi = random_state(rng, 3);
  const StateVector out = apply_atomic(t, psi);
  const ComplexMatrix rho = projector(out) / out.squaredNorm();
  EXPECT_NEAR((rho * rho).trace().real(), 1.0, 1e-12);
  EXPECT_THROW(apply_atomic(make_transformation(ops), psi), DomainError);
}

TEST(Tests, TraceProperties) {
  std::mt19937_64 rng(24);
  const auto complete = ontic::testing::random_test(rng, 2, 2, 3);
  EXPECT_TRUE(is_trace_preserving(complete));
  EXPECT_TRUE(is_trace_nonincreasing(complete));
  const std::vector<ComplexMatrix> partial(complete.begin(), complete.begin() + 2);
  EXPECT_FALSE(is_trace_preserving(partial));
  EXPECT_TRUE(is_trace_nonincreasing(partial));
  EXPECT_FALSE(is_trace_nonincreasing({1.1 * ComplexMatrix::Identity(2, 2)}));
}

TEST(Epistemic, SumsEvents) {
  const Circuit c = load_circuit(ontic::testing::circuit_path("nine_node.ocirc"));
  const Node& v = c.nodes[*c.node_index("V")];
  const auto epi = epistemic_of(c, v);
  EXPECT_EQ(epi.kraus.size(), 2u);
  EXPECT_TRUE(is_trace_preserving(epi.kraus));
  const Node& lambda = c.nodes[*c.node_index("Lambda")];
  EXPECT_EQ(epistemic_of(c, lambda, "1").kraus.size(), 4u);
  const auto ev = event_transformation(c, lambda, 5);
  EXPECT_TRUE(ev.atomic());
  EXPECT_EQ(ev.input.factor_dims, (std::vector<std::size_t>{2, 2}));
}

TEST(Born, PreparationProbability) {
  StateVector half(2);
  half << 0.6, 0.0;
  const auto t = make_transformation({ComplexMatrix(half)});
  EXPECT_NEAR(born_probability(t), 0.36, 1e-15);
  EXPECT_THROW(born_probability(make_transformation({ComplexMatrix::Identity(2, 2)})),
               DomainError);
}

TEST(Discard, CompletesTest) {
  KrausSet set{{mat2(1, 0, 0, 0)}, {"up"}};
  const KrausSet full = complete_with_discard(set);
  ASSERT_EQ(full.operators.size(), 2u);
  EXPECT_EQ(full.labels.back(), "discard");
  EXPECT_TRUE(full.deterministic());
  EXPECT_LT(max_abs_diff(full.operators[1].adjoint() * full.operators[1], mat2(0, 0, 0, 1)),
            1e-12);
}

TEST(Dilation, ReproducesBranches) {
  std::mt19937_64 rng(25);
  for (std::size_t d : {2u, 3u}) {
    for (int trial = 0; trial < 5; ++trial) {
      KrausSet set;
      set.operators = ontic::testing::random_test(rng, d, d, 1 + trial % 3);
      for (std::size_t i = 0; i < set.operators.size(); ++i) set.labels.push_back(std::to_string(i));
      const Dilation dil = dilate(set);
      EXPECT_TRUE(is_unitary(dil.unitary, 1e-10));
      for (int s = 0; s < 5; ++s) {
        const ComplexMatrix rho = projector(random_state(rng, d));
        for (std::size_t i = 0; i < set.operators.size(); ++i) {
          const ComplexMatrix expected =
              set.operators[i] * rho * set.operators[i].adjoint();
          EXPECT_LT(max_abs_diff(dilation_branch(dil, rho, i), expected), 1e-10);
        }
      }
    }
  }
}

TEST(Dilation, RejectsIncompleteSets) {
  KrausSet set{{mat2(1, 0, 0, 0)}, {"up"}};
  EXPECT_THROW(dilate(set), DomainError);
}

TEST(Holevo, LogDimension) {
  EXPECT_NEAR(holevo_limit(SystemShape{{2, 2, 2}}), 3.0, 1e-15);
  EXPECT_NEAR(holevo_limit(SystemShape{{3}}), std::log2(3.0), 1e-15);
}
