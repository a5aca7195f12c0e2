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

#include <gtest/gtest.h>

#include "qecdecay/analytics.hpp"
#include "qecdecay/diffusion.hpp"
#include "qecdecay/errors.hpp"
#include "qecdecay/protocol.hpp"

namespace qecd {
namespace {

// 13C, 0.357 T/m for 2.5 ms.
constexpr double kGamma13C = 6.728284e7;

GradientDiffusionSpec example_spec(DiffusionScheme scheme) {
  return {gradient_wavenumber(kGamma13C, 0.357, 2.5e-3), 2.0e-9, 0.05, scheme};
}

SpinOperator coherence(int row, int col) {
  SpinOperator op = SpinOperator::Zero();
  op(row, col) = 1.0;
  return op;
}

TEST(Wavenumber, WorkedExample) {
  EXPECT_NEAR(gradient_wavenumber(kGamma13C, 0.357, 2.5e-3), 6.005e4, 1e1);
}

TEST(Attenuation, ZeroQuantumUnaffectedAndOrderSquaredLaw) {
  const GradientDiffusionSpec spec = example_spec(DiffusionScheme::totally_correlated);
  EXPECT_DOUBLE_EQ(attenuation_factor(spec, 0), 1.0);
  EXPECT_NEAR(std::log(attenuation_factor(spec, 3)) / std::log(attenuation_factor(spec, 1)), 9.0, 1e-12);
  EXPECT_DOUBLE_EQ(attenuation_factor(spec, -2), attenuation_factor(spec, 2));
}

TEST(Attenuation, MatchesSingleQuantumChannelDecay) {
  const GradientDiffusionSpec spec = example_spec(DiffusionScheme::totally_correlated);
  const double tau = 1.0 / equivalent_rate(spec);
  EXPECT_NEAR(attenuation_factor(spec, 1), std::exp(-spec.diffusion_time / tau), 1e-14);
}

TEST(DiffusionCovariance, SchemesMapToModels) {
  const GradientDiffusionSpec tc = example_spec(DiffusionScheme::totally_correlated);
  const double k2d = tc.wavenumber * tc.wavenumber * tc.diffusion_coefficient;
  EXPECT_LT((spec_to_covariance(tc).matrix() - Eigen::Matrix3d::Constant(k2d)).cwiseAbs().maxCoeff(), 1e-9);
  const GradientDiffusionSpec uc = example_spec(DiffusionScheme::uncorrelated);
  EXPECT_LT((spec_to_covariance(uc).matrix() - k2d * Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff(), 1e-9);
  const double tau = 1.0 / equivalent_rate(tc);
  EXPECT_LT((spec_to_covariance(tc).matrix() - CovarianceMatrix::totally_correlated(tau).matrix()).cwiseAbs().maxCoeff(),
            1e-9);
}

TEST(DiffusionCovariance, ChannelReproducesAttenuationForEveryOrder) {
  for (double d : {1e-10, 2e-9, 5e-9}) {
    for (double t : {0.01, 0.05, 0.2}) {
      const GradientDiffusionSpec spec{5.0e4, d, t, DiffusionScheme::totally_correlated};
      const CovarianceMatrix cov = spec_to_covariance(spec);
      // |000><000|, |000><100|, |000><110|, |000><111| carry orders 0..3.
      const int cols[] = {0, 4, 6, 7};
      for (int n = 0; n <= 3; ++n) {
        const SpinOperator out = apply_channel_analytic(coherence(0, cols[n]), cov, t, Axis::z);
        EXPECT_NEAR(out(0, cols[n]).real(), attenuation_factor(spec, n), 1e-12) << n;
      }
    }
  }
}

TEST(DiffusionCovariance, UncorrelatedSchemeHasNoCrossTerms) {
  const GradientDiffusionSpec spec = example_spec(DiffusionScheme::uncorrelated);
  const CovarianceMatrix cov = spec_to_covariance(spec);
  const double t = spec.diffusion_time;
  const Complex dq = apply_channel_analytic(coherence(0, 6), cov, t, Axis::z)(0, 6);
  const Complex zq = apply_channel_analytic(coherence(2, 4), cov, t, Axis::z)(2, 4);
  EXPECT_NEAR(std::abs(dq - zq), 0.0, 1e-15);
}

TEST(DiffusionCovariance, UncorrelatedPipelineFollowsClosedForm) {
  const GradientDiffusionSpec spec = example_spec(DiffusionScheme::uncorrelated);
  const double tau = 1.0 / equivalent_rate(spec);
  PipelineConfig cfg{.data = {0, 0, 1}, .channel = NoiseChannel{AnalyticAverage{}, Axis::x, spec_to_covariance(spec)}};
  for (double t : {0.1 * tau, tau, 2 * tau}) {
    EXPECT_NEAR(*run_pipeline(cfg, t).theta, theta_uncorrelated(t, tau), tolerance::kPipeline);
  }
}

TEST(Validation, RejectsBadSpecs) {
  GradientDiffusionSpec spec = example_spec(DiffusionScheme::uncorrelated);
  spec.diffusion_coefficient = -1.0;
  EXPECT_THROW(attenuation_factor(spec, 1), Error);
  spec = example_spec(DiffusionScheme::uncorrelated);
  spec.diffusion_time = -1.0;
  EXPECT_THROW(spec_to_covariance(spec), Error);
  spec = example_spec(DiffusionScheme::uncorrelated);
  spec.wavenumber = std::nan("");
  try {
    equivalent_rate(spec);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::parameter);
  }
}

}  // namespace
}  // namespace qecd
