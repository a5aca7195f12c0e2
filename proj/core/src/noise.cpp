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

#include "qecdecay/noise.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include <Eigen/Eigenvalues>

#include "qecdecay/errors.hpp"
#include "qecdecay/parallel.hpp"

namespace qecd {
namespace {

std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

void check_time(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw Error(ErrorCode::parameter, "evolution time must be finite and >= 0, got " + format_double(t));
  }
}

// Rotation taking the z-axis picture to the requested dephasing axis:
// R I_z R^dagger = I_axis.
SpinOperator axis_frame(Axis axis) {
  switch (axis) {
    case Axis::z: return identity_operator();
    case Axis::x: return global_rotation(Axis::y, std::numbers::pi / 2).unitary;
    case Axis::y: return global_rotation(Axis::x, -std::numbers::pi / 2).unitary;
  }
  return identity_operator();
}

// Doubled I_z eigenvalue (+1 for bit 0, -1 for bit 1) of `spin` (0-based) in
// basis state `index`.
int z_sign(int index, int spin) { return ((index >> (kNumSpins - 1 - spin)) & 1) == 0 ? 1 : -1; }

Eigen::Matrix<double, kDim, kDim> decay_factors(const CovarianceMatrix& cov, double t) {
  Eigen::Matrix<double, kDim, kDim> f;
  for (int a = 0; a < kDim; ++a) {
    for (int b = 0; b < kDim; ++b) {
      std::array<int, 3> eps{};
      for (int k = 0; k < kNumSpins; ++k) {
        eps[k] = (z_sign(a, k) - z_sign(b, k)) / 2;
      }
      f(a, b) = coherence_decay(cov, t, eps);
    }
  }
  return f;
}

struct ChannelAccumulator {
  SpinOperator sum = SpinOperator::Zero();
  Eigen::Matrix<double, kDim, kDim> sum_sq_real = Eigen::Matrix<double, kDim, kDim>::Zero();
  Eigen::Matrix<double, kDim, kDim> sum_sq_imag = Eigen::Matrix<double, kDim, kDim>::Zero();

  ChannelAccumulator& operator+=(const ChannelAccumulator& o) {
    sum += o.sum;
    sum_sq_real += o.sum_sq_real;
    sum_sq_imag += o.sum_sq_imag;
    return *this;
  }
};

}  // namespace

CovarianceMatrix::CovarianceMatrix(const Eigen::Matrix3d& c) : c_(c) {
  if (!c.allFinite()) {
    throw Error(ErrorCode::covariance, "covariance has non-finite entries");
  }
  const double scale = std::max(1.0, c.cwiseAbs().maxCoeff());
  const double tol = tolerance::kExact * scale;
  if ((c - c.transpose()).cwiseAbs().maxCoeff() > tol) {
    throw Error(ErrorCode::covariance, "covariance is not symmetric");
  }
  for (int j = 0; j < 3; ++j) {
    if (c(j, j) < -tol) {
      throw Error(ErrorCode::covariance, "diagonal entry c" + std::to_string(j + 1) + std::to_string(j + 1) +
                                             " = " + format_double(c(j, j)) + " is negative");
    }
  }
  for (int j = 0; j < 3; ++j) {
    for (int k = j + 1; k < 3; ++k) {
      const double bound = std::sqrt(std::max(0.0, c(j, j)) * std::max(0.0, c(k, k)));
      if (std::abs(c(j, k)) > bound + tol) {
        throw Error(ErrorCode::covariance, "|c" + std::to_string(j + 1) + std::to_string(k + 1) +
                                               "| = " + format_double(std::abs(c(j, k))) +
                                               " exceeds sqrt(c_jj c_kk) = " + format_double(bound));
      }
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(0.5 * (c + c.transpose()));
  const Eigen::Vector3d lambda = eig.eigenvalues();
  if (lambda.minCoeff() < -tol) {
    throw Error(ErrorCode::covariance,
                "covariance has negative eigenvalue " + format_double(lambda.minCoeff()) + " (not PSD)");
  }
  const double floor = tolerance::kExact * std::max(lambda.maxCoeff(), 0.0);
  Eigen::Vector3d root;
  for (int i = 0; i < 3; ++i) {
    root(i) = lambda(i) > floor ? std::sqrt(lambda(i)) : 0.0;
  }
  sqrt_ = eig.eigenvectors() * root.asDiagonal() * eig.eigenvectors().transpose();
}

CovarianceMatrix CovarianceMatrix::totally_correlated(double tau) {
  return effective_covariance(CovarianceModel::totally_correlated, tau);
}

CovarianceMatrix CovarianceMatrix::uncorrelated(double tau) {
  return effective_covariance(CovarianceModel::uncorrelated, tau);
}

CovarianceMatrix effective_covariance(CovarianceModel model, double tau) {
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw Error(ErrorCode::parameter, "tau must be finite and > 0, got " + format_double(tau));
  }
  const double rate = 2.0 / tau;
  switch (model) {
    case CovarianceModel::totally_correlated:
      return CovarianceMatrix(Eigen::Matrix3d::Constant(rate));
    case CovarianceModel::uncorrelated:
      return CovarianceMatrix(rate * Eigen::Matrix3d::Identity());
  }
  throw Error(ErrorCode::parameter, "unknown covariance model");
}

CovarianceMatrix effective_covariance(const Eigen::Matrix3d& custom) { return CovarianceMatrix(custom); }

SampleStream::SampleStream(std::uint64_t seed, std::uint64_t index) noexcept {
  std::uint64_t s = seed;
  const std::uint64_t a = splitmix64(s);
  std::uint64_t i = index ^ 0x6a09e667f3bcc909ULL;
  state_ = a ^ splitmix64(i);
}

SampleStream::result_type SampleStream::operator()() noexcept { return splitmix64(state_); }

PhaseSample sample_phases(const CovarianceMatrix& cov, double t, SampleStream& rng) {
  check_time(t);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::Vector3d z;
  for (int i = 0; i < 3; ++i) {
    z(i) = normal(rng);
  }
  return {std::sqrt(t) * (cov.sqrt_factor() * z)};
}

Gate random_propagator(const PhaseSample& phases, Axis axis) {
  const QubitOperator id = QubitOperator::Identity();
  const QubitOperator sigma = pauli_matrix(axis);
  std::array<QubitOperator, 3> r;
  for (int k = 0; k < 3; ++k) {
    const double half = 0.5 * phases.chi(k);
    r[k] = std::cos(half) * id - Complex(0.0, std::sin(half)) * sigma;
  }
  return {"U(chi)", tensor(r[0], r[1], r[2])};
}

double coherence_decay(const CovarianceMatrix& cov, double t, const std::array<int, 3>& eps) {
  const Eigen::Vector3d e(eps[0], eps[1], eps[2]);
  return std::exp(-0.5 * t * e.dot(cov.matrix() * e));
}

SpinOperator apply_channel_analytic(const SpinOperator& op, const CovarianceMatrix& cov, double t,
                                    Axis axis) {
  check_time(t);
  const SpinOperator frame = axis_frame(axis);
  const SpinOperator in_z = frame.adjoint() * op * frame;
  const SpinOperator averaged = in_z.cwiseProduct(decay_factors(cov, t).cast<Complex>());
  return frame * averaged * frame.adjoint();
}

DensityMatrix apply_channel_analytic(const DensityMatrix& rho, const CovarianceMatrix& cov, double t,
                                     Axis axis) {
  return DensityMatrix(apply_channel_analytic(rho.matrix(), cov, t, axis));
}

ChannelEstimate estimate_channel_mc(const SpinOperator& op, const CovarianceMatrix& cov, double t,
                                    Axis axis, const MonteCarloAverage& mc) {
  check_time(t);
  if (mc.samples == 0) {
    throw Error(ErrorCode::parameter, "Monte Carlo channel needs at least one sample");
  }
  const auto total = deterministic_reduce<ChannelAccumulator>(
      mc.samples, mc.threads, [&](std::size_t i, ChannelAccumulator& acc) {
        SampleStream rng(mc.seed, i);
        const SpinOperator u = random_propagator(sample_phases(cov, t, rng), axis).unitary;
        const SpinOperator out = u * op * u.adjoint();
        acc.sum += out;
        acc.sum_sq_real += out.real().cwiseAbs2();
        acc.sum_sq_imag += out.imag().cwiseAbs2();
      });
  const double n = static_cast<double>(mc.samples);
  ChannelEstimate est;
  est.samples = mc.samples;
  est.mean = total.sum / n;
  const auto stderr_of = [n](const Eigen::Matrix<double, kDim, kDim>& mean,
                             const Eigen::Matrix<double, kDim, kDim>& sum_sq) {
    Eigen::Matrix<double, kDim, kDim> var = (sum_sq / n - mean.cwiseAbs2()).cwiseMax(0.0);
    if (n > 1) {
      var *= n / (n - 1);
    }
    return Eigen::Matrix<double, kDim, kDim>((var / n).cwiseSqrt());
  };
  est.stderr_real = stderr_of(est.mean.real(), total.sum_sq_real);
  est.stderr_imag = stderr_of(est.mean.imag(), total.sum_sq_imag);
  return est;
}

DensityMatrix apply_channel_mc(const DensityMatrix& rho, const NoiseChannel& channel, double t) {
  const auto* mc = std::get_if<MonteCarloAverage>(&channel.kind);
  if (mc == nullptr) {
    throw Error(ErrorCode::config, "apply_channel_mc needs a Monte Carlo channel");
  }
  return DensityMatrix(estimate_channel_mc(rho.matrix(), channel.covariance, t, channel.axis, *mc).mean);
}

DensityMatrix apply_channel(const DensityMatrix& rho, const NoiseChannel& channel, double t) {
  if (std::holds_alternative<MonteCarloAverage>(channel.kind)) {
    return apply_channel_mc(rho, channel, t);
  }
  return apply_channel_analytic(rho, channel.covariance, t, channel.axis);
}

}  // namespace qecd
