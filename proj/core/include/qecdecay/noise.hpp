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

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <variant>

#include <Eigen/Core>

#include "qecdecay/gates.hpp"
#include "qecdecay/operators.hpp"

namespace qecd {

/// Rate matrix C of the accumulated phases: Cov(chi) = C t, entries in rad^2/s.
/// Indices are zero-based, so c(0, 0) is c^{11}.
class CovarianceMatrix {
 public:
  /// Validates symmetry, nonnegative diagonal, Cauchy-Schwarz and positive
  /// semidefiniteness; throws Error(covariance) naming the first violation.
  explicit CovarianceMatrix(const Eigen::Matrix3d& c);

  /// c^{jk} = 2/tau for every pair.
  static CovarianceMatrix totally_correlated(double tau);
  /// c^{jj} = 2/tau, c^{jk} = 0 for j != k.
  static CovarianceMatrix uncorrelated(double tau);

  const Eigen::Matrix3d& matrix() const noexcept { return c_; }
  double operator()(int j, int k) const { return c_(j, k); }

  /// Symmetric square root S with S S = C; rank-deficient C is handled by
  /// clamping eigenvalues at zero.
  const Eigen::Matrix3d& sqrt_factor() const noexcept { return sqrt_; }

 private:
  Eigen::Matrix3d c_;
  Eigen::Matrix3d sqrt_;
};

enum class CovarianceModel { totally_correlated, uncorrelated };

/// Throws Error(parameter) for tau <= 0.
CovarianceMatrix effective_covariance(CovarianceModel model, double tau);
CovarianceMatrix effective_covariance(const Eigen::Matrix3d& custom);

/// Accumulated phases chi^k (rad) for one trajectory.
struct PhaseSample {
  Eigen::Vector3d chi = Eigen::Vector3d::Zero();
};

/// Counter-based random stream: the state is a splitmix64 hash of
/// (seed, index), so sample i draws the same numbers no matter which thread
/// evaluates it. Satisfies UniformRandomBitGenerator.
class SampleStream {
 public:
  using result_type = std::uint64_t;

  SampleStream(std::uint64_t seed, std::uint64_t index) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }
  result_type operator()() noexcept;

 private:
  std::uint64_t state_;
};

/// chi ~ N(0, C t). Throws Error(parameter) for t < 0.
PhaseSample sample_phases(const CovarianceMatrix& cov, double t, SampleStream& rng);

/// exp(-i (chi^1 I_a^1 + chi^2 I_a^2 + chi^3 I_a^3)), exact.
Gate random_propagator(const PhaseSample& phases, Axis axis);

struct AnalyticAverage {};

struct MonteCarloAverage {
  std::size_t samples = 1;
  std::uint64_t seed = 0;
  /// 0 selects hardware concurrency. Results do not depend on this value.
  unsigned threads = 0;
};

struct NoiseChannel {
  std::variant<AnalyticAverage, MonteCarloAverage> kind;
  Axis axis = Axis::x;
  CovarianceMatrix covariance;
};

/// exp(-(t/2) eps^T C eps) for the coherence between dephasing-axis
/// eigenstates whose doubled eigenvalue differences are `eps`.
double coherence_decay(const CovarianceMatrix& cov, double t, const std::array<int, 3>& eps);

/// Exact Gaussian average of U(chi) X U(chi)^dagger. Linear, so it accepts any
/// operator; the DensityMatrix overload re-validates the output.
SpinOperator apply_channel_analytic(const SpinOperator& op, const CovarianceMatrix& cov, double t,
                                    Axis axis);
DensityMatrix apply_channel_analytic(const DensityMatrix& rho, const CovarianceMatrix& cov, double t,
                                     Axis axis);

struct ChannelEstimate {
  SpinOperator mean;
  /// Standard error of the mean, separately for real and imaginary parts.
  Eigen::Matrix<double, kDim, kDim> stderr_real;
  Eigen::Matrix<double, kDim, kDim> stderr_imag;
  std::size_t samples = 0;
};

ChannelEstimate estimate_channel_mc(const SpinOperator& op, const CovarianceMatrix& cov, double t,
                                    Axis axis, const MonteCarloAverage& mc);

/// Requires a Monte Carlo channel; throws Error(config) otherwise.
DensityMatrix apply_channel_mc(const DensityMatrix& rho, const NoiseChannel& channel, double t);

/// Dispatches on the channel kind.
DensityMatrix apply_channel(const DensityMatrix& rho, const NoiseChannel& channel, double t);

}  // namespace qecd
