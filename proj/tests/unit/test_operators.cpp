// Copyright 2026 The qecdecay Authors
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

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qecdecay/errors.hpp"
#include "qecdecay/gates.hpp"
#include "qecdecay/operators.hpp"

namespace qecd {
namespace {

using testing::Mat8;

TEST(Generators, SpinOneZIsDiagonalHalfSigma) {
  const SpinOperator iz1 = make_generator(1, Axis::z);
  Eigen::Matrix<double, 8, 1> expected;
  expected << 0.5, 0.5, 0.5, 0.5, -0.5, -0.5, -0.5, -0.5;
  EXPECT_LT(max_abs_diff(iz1, SpinOperator(expected.cast<Complex>().asDiagonal())), tolerance::kExact);
}

TEST(Generators, MatchIndependentEmbedding) {
  for (int k = 1; k <= 3; ++k) {
    EXPECT_LT(max_abs_diff(make_generator(k, Axis::x), testing::raw_generator(k, 'x')), tolerance::kExact);
    EXPECT_LT(max_abs_diff(make_generator(k, Axis::y), testing::raw_generator(k, 'y')), tolerance::kExact);
    EXPECT_LT(max_abs_diff(make_generator(k, Axis::z), testing::raw_generator(k, 'z')), tolerance::kExact);
  }
}

TEST(Generators, HermitianInvolutionsWithHalfEigenvalues) {
  for (int k = 1; k <= 3; ++k) {
    for (Axis a : {Axis::x, Axis::y, Axis::z}) {
      const SpinOperator g = make_generator(k, a);
      EXPECT_LT(max_abs_diff(g, SpinOperator(g.adjoint())), tolerance::kExact);
      EXPECT_LT(max_abs_diff(4.0 * g * g, identity_operator()), tolerance::kExact);
      Eigen::SelfAdjointEigenSolver<SpinOperator> eig(g);
      EXPECT_NEAR(eig.eigenvalues().minCoeff(), -0.5, tolerance::kExact);
      EXPECT_NEAR(eig.eigenvalues().maxCoeff(), 0.5, tolerance::kExact);
    }
  }
}

TEST(Generators, DistinctSpinsAreTraceOrthogonal) {
  EXPECT_LT(std::abs((make_generator(1, Axis::x) * make_generator(2, Axis::x)).trace()), tolerance::kExact);
}

TEST(Generators, RejectsBadSpinIndex) {
  EXPECT_THROW(make_generator(0, Axis::x), Error);
  EXPECT_THROW(make_generator(4, Axis::z), Error);
}

TEST(Idempotents, AlgebraHolds) {
  for (int k = 1; k <= 3; ++k) {
    const SpinOperator ep = make_idempotent(k, Sign::plus);
    const SpinOperator em = make_idempotent(k, Sign::minus);
    EXPECT_LT(max_abs_diff(ep * ep, ep), tolerance::kExact);
    EXPECT_LT(max_abs_diff(em * em, em), tolerance::kExact);
    EXPECT_LT((ep * em).cwiseAbs().maxCoeff(), tolerance::kExact);
    EXPECT_LT(max_abs_diff(ep + em, identity_operator()), tolerance::kExact);
    // I_z E_+- = +-1/2 E_+-
    EXPECT_LT(max_abs_diff(make_generator(k, Axis::z) * ep, 0.5 * ep), tolerance::kExact);
    EXPECT_LT(max_abs_diff(make_generator(k, Axis::z) * em, -0.5 * em), tolerance::kExact);
  }
}

TEST(Idempotents, TripleProductIsBasisProjector) {
  const SpinOperator p = make_idempotent(1, Sign::plus) * make_idempotent(2, Sign::plus) *
                         make_idempotent(3, Sign::plus);
  SpinOperator expected = SpinOperator::Zero();
  expected(0, 0) = 1.0;
  EXPECT_LT(max_abs_diff(p, expected), tolerance::kExact);
}

TEST(ProductOperators, FormTraceOrthogonalBasis) {
  const auto basis = product_operator_basis();
  ASSERT_EQ(basis.size(), 64u);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = 0; j < basis.size(); ++j) {
      const Complex tr = (basis[i] * basis[j]).trace();
      EXPECT_NEAR(std::abs(tr - Complex(i == j ? 8.0 : 0.0)), 0.0, tolerance::kExact) << i << "," << j;
    }
  }
}

TEST(ProductOperators, LabelsScaleByTwoPerSpin) {
  const SpinOperator zz1 = product_operator("zz1");
  EXPECT_LT(max_abs_diff(zz1, 4.0 * make_generator(1, Axis::z) * make_generator(2, Axis::z)), tolerance::kExact);
  EXPECT_THROW(product_operator("zz"), Error);
  EXPECT_THROW(product_operator("zq1"), Error);
}

TEST(PureDataState, GroundStateIsAllUpProjector) {
  const DensityMatrix rho = make_pure_data_state(1.0, 0.0);
  SpinOperator expected = SpinOperator::Zero();
  expected(0, 0) = 1.0;
  EXPECT_LT(max_abs_diff(rho.matrix(), expected), tolerance::kExact);
}

TEST(PureDataState, XEigenstate) {
  const double s = 1.0 / std::sqrt(2.0);
  const BlochVector b = bloch_of(partial_trace_ancillae(make_pure_data_state(s, s)));
  EXPECT_NEAR(b.x, 1.0, tolerance::kExact);
  EXPECT_NEAR(b.y, 0.0, tolerance::kExact);
  EXPECT_NEAR(b.z, 0.0, tolerance::kExact);
}

TEST(PureDataState, MatchesOuterProductAndIsRankOne) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> n;
  for (int trial = 0; trial < 20; ++trial) {
    Complex a(n(rng), n(rng)), b(n(rng), n(rng));
    const double norm = std::sqrt(std::norm(a) + std::norm(b));
    a /= norm;
    b /= norm;
    Eigen::Matrix<Complex, 8, 1> psi = Eigen::Matrix<Complex, 8, 1>::Zero();
    psi(0) = a;  // |000>
    psi(4) = b;  // |100>
    const DensityMatrix rho = make_pure_data_state(a, b);
    EXPECT_LT(max_abs_diff(rho.matrix(), SpinOperator(psi * psi.adjoint())), tolerance::kExact);
    EXPECT_NEAR(rho.purity(), 1.0, tolerance::kExact);
  }
}

TEST(PureDataState, PolarRotationFormAgreesOnGrid) {
  using std::numbers::pi;
  const SpinOperator e_plus = make_idempotent(1, Sign::plus) * make_idempotent(2, Sign::plus) *
                              make_idempotent(3, Sign::plus);
  for (double theta = 0.0; theta <= pi + 1e-9; theta += pi / 7) {
    for (double phi = 0.0; phi < 2 * pi; phi += pi / 5) {
      const Mat8 rz = testing::expm(Complex(0, -phi) * testing::raw_generator(1, 'z'));
      const Mat8 rx = testing::expm(Complex(0, -theta) * testing::raw_generator(1, 'x'));
      const Mat8 rotated = rz * rx * e_plus * rx.adjoint() * rz.adjoint();
      const Complex alpha = std::cos(theta / 2) * std::polar(1.0, -phi / 2);
      const Complex beta = Complex(0, -1) * std::sin(theta / 2) * std::polar(1.0, phi / 2);
      const DensityMatrix rho = make_pure_data_state(alpha, beta);
      EXPECT_LT(max_abs_diff(rho.matrix(), rotated), tolerance::kExact) << theta << " " << phi;
      EXPECT_NEAR(bloch_of(partial_trace_ancillae(rho)).z, std::cos(theta), tolerance::kExact);
    }
  }
}

TEST(PureDataState, RejectsUnnormalizedAmplitudes) {
  try {
    make_pure_data_state(1.0, 1.0);
    FAIL() << "expected normalization error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::normalization);
  }
}

TEST(PartialTrace, ProductStateKeepsDataFactor) {
  const QubitOperator reduced = partial_trace_ancillae(
      SpinOperator(make_idempotent(1, Sign::plus) * make_idempotent(2, Sign::plus) * make_idempotent(3, Sign::plus)));
  QubitOperator expected = QubitOperator::Zero();
  expected(0, 0) = 1.0;
  EXPECT_LT(max_abs_diff(reduced, expected), tolerance::kExact);
}

TEST(PartialTrace, MaximallyMixedStaysMaximallyMixed) {
  const ReducedDensityMatrix r = partial_trace_ancillae(DensityMatrix(identity_operator() / 8.0));
  EXPECT_LT(max_abs_diff(r.matrix(), QubitOperator(QubitOperator::Identity() / 2.0)), tolerance::kExact);
}

TEST(PartialTrace, EncodedSuperpositionReducesToMixed) {
  const double s = 1.0 / std::sqrt(2.0);
  const SpinOperator enc = encoder().unitary;
  const DensityMatrix rho_b(conjugate(enc, make_pure_data_state(s, s).matrix()));
  // Brute force: psi = s|000> + s|111>, rho1[a][b] = sum_k psi[a,k] conj(psi[b,k]).
  Eigen::Matrix<Complex, 8, 1> psi = Eigen::Matrix<Complex, 8, 1>::Zero();
  psi(0) = s;
  psi(7) = s;
  QubitOperator brute = QubitOperator::Zero();
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int k = 0; k < 4; ++k) brute(a, b) += psi(4 * a + k) * std::conj(psi(4 * b + k));
  EXPECT_LT(max_abs_diff(brute, QubitOperator(QubitOperator::Identity() / 2.0)), tolerance::kExact);
  EXPECT_LT(max_abs_diff(partial_trace_ancillae(rho_b).matrix(), brute), tolerance::kExact);
}

TEST(AncillaProjector, IdentityIsFixed) {
  EXPECT_LT(max_abs_diff(project_ancilla_diagonal(identity_operator()), identity_operator()), tolerance::kExact);
}

TEST(AncillaProjector, DecodedPairwiseFactorCollapsesToCosh) {
  const SpinOperator xx13 = 4.0 * make_generator(1, Axis::x) * make_generator(3, Axis::x);
  for (double tc : {0.0, 0.1, 0.7, 2.5}) {
    const SpinOperator fd = std::cosh(tc) * identity_operator() - std::sinh(tc) * xx13;
    EXPECT_LT(max_abs_diff(project_ancilla_diagonal(fd), SpinOperator(std::cosh(tc) * identity_operator())),
              tolerance::kExact * std::cosh(tc));
  }
}

TEST(AncillaProjector, PreservesPartialTraceAndIsIdempotent) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    const SpinOperator x = testing::random_operator(rng);
    const SpinOperator px = project_ancilla_diagonal(x);
    EXPECT_LT(max_abs_diff(partial_trace_ancillae(px), partial_trace_ancillae(x)), tolerance::kExact * 10);
    EXPECT_LT(max_abs_diff(project_ancilla_diagonal(px), px), tolerance::kExact * 10);
  }
}

TEST(Bloch, ReadsCoefficients) {
  QubitOperator up = QubitOperator::Zero();
  up(0, 0) = 1.0;
  const BlochVector b = bloch_of(ReducedDensityMatrix(up));
  EXPECT_NEAR(b.z, 1.0, tolerance::kExact);
  EXPECT_NEAR(b.x, 0.0, tolerance::kExact);

  const BlochVector mixed = bloch_of(ReducedDensityMatrix(QubitOperator::Identity() / 2.0));
  EXPECT_NEAR(mixed.norm(), 0.0, tolerance::kExact);

  // 1/2 + 0.3 * 2I_x
  QubitOperator rho = QubitOperator::Identity() / 2.0;
  rho(0, 1) = rho(1, 0) = 0.3;
  EXPECT_NEAR(bloch_of(ReducedDensityMatrix(rho)).x, 0.6, tolerance::kExact);
}

TEST(DensityMatrix, RejectsInvalidMatrices) {
  SpinOperator not_unit = identity_operator();
  EXPECT_THROW(DensityMatrix{not_unit}, Error);
  SpinOperator negative = SpinOperator::Zero();
  negative(0, 0) = 1.5;
  negative(1, 1) = -0.5;
  EXPECT_THROW(DensityMatrix{negative}, Error);
  SpinOperator nonherm = identity_operator() / 8.0;
  nonherm(0, 1) = 0.1;
  EXPECT_THROW(DensityMatrix{nonherm}, Error);
  EXPECT_THROW(validate(BlochVector{1.0, 1.0, 0.0}), Error);
}

}  // namespace
}  // namespace qecd
