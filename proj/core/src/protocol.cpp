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

#include "qecdecay/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "qecdecay/analytics.hpp"
#include "qecdecay/errors.hpp"
#include "qecdecay/gates.hpp"
#include "qecdecay/parallel.hpp"

namespace qecd {
namespace {

constexpr double kWeightTol = 1e-12;
constexpr double kThetaDenominatorTol = 1e-12;

void validate_data(const BlochVector& v) {
  try {
    validate(v);
  } catch (const Error& e) {
    throw Error(ErrorCode::config, e.what());
  }
}

void validate_components(const std::vector<CorrelatedComponent>& components) {
  if (components.empty()) {
    throw Error(ErrorCode::config, "correlated mixture has no components");
  }
  double sum = 0.0;
  for (const auto& c : components) {
    if (!(c.weight >= 0.0)) {
      throw Error(ErrorCode::config, "mixture weight " + std::to_string(c.weight) + " is negative");
    }
    validate_data(c.data);
    sum += c.weight;
  }
  if (std::abs(sum - 1.0) > kWeightTol) {
    throw Error(ErrorCode::config, "mixture weights sum to " + std::to_string(sum) + ", expected 1");
  }
}

BlochVector initial_bloch(const PipelineConfig& config) {
  if (const auto* comps = std::get_if<std::vector<CorrelatedComponent>>(&config.ancillae)) {
    BlochVector v;
    for (const auto& c : *comps) {
      v.x += c.weight * c.data.x;
      v.y += c.weight * c.data.y;
      v.z += c.weight * c.data.z;
    }
    return v;
  }
  return config.data;
}

std::optional<double> extract_theta(const BlochVector& in, const BlochVector& out) {
  const double denom = in.y * in.y + in.z * in.z;
  if (denom < kThetaDenominatorTol) {
    return std::nullopt;
  }
  return (out.y * in.y + out.z * in.z) / denom;
}

// Gates applied before and after the channel. With correction off both are
// the identity.
struct PipelineGates {
  SpinOperator before;
  SpinOperator after;
};

PipelineGates pipeline_gates(const PipelineConfig& config) {
  if (!config.correction) {
    return {identity_operator(), identity_operator()};
  }
  const SpinOperator enc = encoder().unitary;
  SpinOperator rot = identity_operator();
  if (config.rotation == BasisRotation::y_half_pi) {
    rot = global_rotation(Axis::y, std::numbers::pi / 2).unitary;
  }
  return {rot * enc, toffoli().unitary * enc * rot.adjoint()};
}

// Theta-dot at t = 0 for the (s2, s3) ancilla sector, as coefficients of
// (c11, c22, c33).
Eigen::RowVector3d sector_rate_coefficients(int s2, int s3) {
  const double s23 = s2 * s3;
  return 0.25 * Eigen::RowVector3d(s23 - 1.0, s23 - s2, s23 - s3);
}

int sign_of(Sign s) { return sign_value(s); }

struct McAccumulator {
  QubitOperator reduced = QubitOperator::Zero();
  Eigen::Vector3d sum = Eigen::Vector3d::Zero();
  Eigen::Vector3d sum_sq = Eigen::Vector3d::Zero();
  double theta_sum = 0.0;
  double theta_sum_sq = 0.0;

  McAccumulator& operator+=(const McAccumulator& o) {
    reduced += o.reduced;
    sum += o.sum;
    sum_sq += o.sum_sq;
    theta_sum += o.theta_sum;
    theta_sum_sq += o.theta_sum_sq;
    return *this;
  }
};

double standard_error(double sum, double sum_sq, double n) {
  if (n < 2) {
    return 0.0;
  }
  const double mean = sum / n;
  const double var = std::max(0.0, (sum_sq / n - mean * mean) * n / (n - 1));
  return std::sqrt(var / n);
}

}  // namespace

double AncillaMixture::weight(Sign ancilla2, Sign ancilla3) const noexcept {
  if (ancilla2 == Sign::plus) {
    return ancilla3 == Sign::plus ? mu_pp : mu_pm;
  }
  return ancilla3 == Sign::plus ? mu_mp : mu_mm;
}

void validate(const AncillaMixture& mix) {
  for (double w : {mix.mu_pp, mix.mu_pm, mix.mu_mp, mix.mu_mm}) {
    if (!(w >= 0.0)) {
      throw Error(ErrorCode::config, "ancilla weight " + std::to_string(w) + " is negative");
    }
  }
  const double sum = mix.mu_pp + mix.mu_pm + mix.mu_mp + mix.mu_mm;
  if (std::abs(sum - 1.0) > kWeightTol) {
    throw Error(ErrorCode::config, "ancilla weights sum to " + std::to_string(sum) + ", expected 1");
  }
}

BlochVector bloch_from_amplitudes(Complex alpha, Complex beta) {
  return bloch_of(partial_trace_ancillae(make_pure_data_state(alpha, beta)));
}

DensityMatrix initial_state(const PipelineConfig& config) {
  SpinOperator rho = SpinOperator::Zero();
  if (std::holds_alternative<PureGroundAncillae>(config.ancillae)) {
    validate_data(config.data);
    rho = with_diagonal_ancillae(qubit_operator_from_bloch(config.data), Sign::plus, Sign::plus);
  } else if (const auto* mix = std::get_if<AncillaMixture>(&config.ancillae)) {
    validate(*mix);
    validate_data(config.data);
    const QubitOperator data = qubit_operator_from_bloch(config.data);
    for (Sign s2 : {Sign::plus, Sign::minus}) {
      for (Sign s3 : {Sign::plus, Sign::minus}) {
        rho += mix->weight(s2, s3) * with_diagonal_ancillae(data, s2, s3);
      }
    }
  } else {
    const auto& comps = std::get<std::vector<CorrelatedComponent>>(config.ancillae);
    validate_components(comps);
    for (const auto& c : comps) {
      rho += c.weight * with_diagonal_ancillae(qubit_operator_from_bloch(c.data), c.ancilla2, c.ancilla3);
    }
  }
  return DensityMatrix(rho);
}

PipelineResult run_pipeline(const PipelineConfig& config, double t) {
  const DensityMatrix rho_a = initial_state(config);
  const PipelineGates gates = pipeline_gates(config);
  const DensityMatrix encoded(conjugate(gates.before, rho_a.matrix()));
  const DensityMatrix decohered = apply_channel(encoded, config.channel, t);
  const DensityMatrix corrected(conjugate(gates.after, decohered.matrix()));
  ReducedDensityMatrix reduced = partial_trace_ancillae(corrected);
  const BlochVector in = initial_bloch(config);
  const BlochVector out = bloch_of(reduced);
  return {std::move(reduced), in, out, extract_theta(in, out)};
}

McPipelineResult run_pipeline_mc(const PipelineConfig& config, double t, std::size_t samples,
                                 std::uint64_t seed, unsigned threads) {
  if (samples == 0) {
    throw Error(ErrorCode::parameter, "Monte Carlo pipeline needs at least one sample");
  }
  const DensityMatrix rho_a = initial_state(config);
  const PipelineGates gates = pipeline_gates(config);
  const SpinOperator encoded = conjugate(gates.before, rho_a.matrix());
  const BlochVector in = initial_bloch(config);
  const double denom = in.y * in.y + in.z * in.z;
  const bool has_theta = denom >= kThetaDenominatorTol;
  const Axis axis = config.channel.axis;
  const CovarianceMatrix& cov = config.channel.covariance;

  const auto total = deterministic_reduce<McAccumulator>(samples, threads, [&](std::size_t i, McAccumulator& acc) {
    SampleStream rng(seed, i);
    const SpinOperator u = random_propagator(sample_phases(cov, t, rng), axis).unitary;
    const SpinOperator w = gates.after * u;
    const QubitOperator reduced = partial_trace_ancillae(conjugate(w, encoded));
    const BlochVector b = bloch_of(reduced);
    const Eigen::Vector3d v(b.x, b.y, b.z);
    acc.reduced += reduced;
    acc.sum += v;
    acc.sum_sq += v.cwiseAbs2();
    if (has_theta) {
      const double th = (b.y * in.y + b.z * in.z) / denom;
      acc.theta_sum += th;
      acc.theta_sum_sq += th * th;
    }
  });

  const double n = static_cast<double>(samples);
  ReducedDensityMatrix reduced(total.reduced / n);
  const BlochVector out = bloch_of(reduced);
  McPipelineResult mc{{std::move(reduced), in, out, std::nullopt}, {}, std::nullopt, samples};
  mc.bloch_stderr = {standard_error(total.sum(0), total.sum_sq(0), n),
                     standard_error(total.sum(1), total.sum_sq(1), n),
                     standard_error(total.sum(2), total.sum_sq(2), n)};
  if (has_theta) {
    mc.result.theta = total.theta_sum / n;
    mc.theta_stderr = standard_error(total.theta_sum, total.theta_sum_sq, n);
  }
  return mc;
}

double mixed_ancilla_theta(const AncillaMixture& mix, const CovarianceMatrix& cov, double t) {
  validate(mix);
  const DecayFactors f = decay_factors(cov, t);
  const double s2 = mix.mu_pp + mix.mu_pm - mix.mu_mp - mix.mu_mm;
  const double s3 = mix.mu_pp - mix.mu_pm + mix.mu_mp - mix.mu_mm;
  const double s23 = mix.mu_pp - mix.mu_pm - mix.mu_mp + mix.mu_mm;
  return 0.5 * (f.f1 + s2 * f.f2 + s3 * f.f3 - s23 * triple_decay_product(cov, t));
}

double mixed_ancilla_derivative_at_zero(const AncillaMixture& mix, const CovarianceMatrix& cov) {
  validate(mix);
  const double c11 = cov(0, 0), c22 = cov(1, 1), c33 = cov(2, 2);
  return 0.25 * ((mix.mu_pp - 1.0) * c11 - mix.mu_pm * (c11 + 2.0 * c22) - mix.mu_mp * (c11 + 2.0 * c33) +
                 mix.mu_mm * (c11 + 2.0 * c22 + 2.0 * c33));
}

bool NogoCertificate::ground_is_unique_zero() const noexcept {
  return zeros.size() == 1 && zeros.front().mix.mu_pp == 1.0;
}

bool NogoCertificate::ground_is_unique_protected() const noexcept {
  return protected_points.size() == 1 && protected_points.front().mix.mu_pp == 1.0;
}

NogoCertificate mixed_ancilla_nogo_search(const CovarianceMatrix& cov, double step) {
  if (!(cov(0, 0) > 0.0)) {
    throw Error(ErrorCode::precondition, "the no-go search requires c11 > 0 (got c11 = " +
                                             std::to_string(cov(0, 0)) + ")");
  }
  if (!(step > 0.0) || step > 1.0) {
    throw Error(ErrorCode::parameter, "grid step must lie in (0, 1]");
  }
  const double divisions_real = 1.0 / step;
  const long divisions = std::lround(divisions_real);
  if (std::abs(divisions_real - static_cast<double>(divisions)) > 1e-9) {
    throw Error(ErrorCode::parameter, "1/step must be an integer");
  }

  NogoCertificate cert;
  cert.zero_tolerance = tolerance::kExact * std::max(1.0, cov.matrix().cwiseAbs().maxCoeff());
  cert.min_margin_off_ground = std::numeric_limits<double>::infinity();
  const double n = static_cast<double>(divisions);
  for (long i = 0; i <= divisions; ++i) {
    for (long j = 0; i + j <= divisions; ++j) {
      for (long k = 0; i + j + k <= divisions; ++k) {
        const long l = divisions - i - j - k;
        const AncillaMixture mix{i / n, j / n, k / n, l / n};
        SimplexPoint p{mix, mixed_ancilla_derivative_at_zero(mix, cov), mixed_ancilla_theta(mix, cov, 0.0)};
        ++cert.points_examined;
        const bool is_ground = i == divisions;
        const bool is_vertex = i == divisions || j == divisions || k == divisions || l == divisions;
        if (std::abs(p.derivative) <= cert.zero_tolerance) {
          cert.zeros.push_back(p);
          if (std::abs(p.theta_at_zero - 1.0) <= cert.zero_tolerance) {
            cert.protected_points.push_back(p);
          }
        }
        if (!is_ground && std::abs(p.derivative) < cert.min_margin_off_ground) {
          cert.min_margin_off_ground = std::abs(p.derivative);
          cert.min_margin_point = mix;
        }
        if (is_vertex) {
          cert.vertices.push_back(p);
        }
      }
    }
  }
  // vertices in ++, +-, -+, -- order
  std::sort(cert.vertices.begin(), cert.vertices.end(), [](const SimplexPoint& a, const SimplexPoint& b) {
    const auto key = [](const AncillaMixture& m) {
      return m.mu_pp == 1.0 ? 0 : m.mu_pm == 1.0 ? 1 : m.mu_mp == 1.0 ? 2 : 3;
    };
    return key(a.mix) < key(b.mix);
  });
  return cert;
}

Eigen::Matrix<double, 2, 3> correlated_mixture_system(const std::vector<CorrelatedComponent>& components) {
  validate_components(components);
  Eigen::Matrix<double, 2, 3> system = Eigen::Matrix<double, 2, 3>::Zero();
  for (const auto& c : components) {
    const Eigen::RowVector3d rate = sector_rate_coefficients(sign_of(c.ancilla2), sign_of(c.ancilla3));
    system.row(0) += c.weight * c.data.y * rate;
    system.row(1) += c.weight * c.data.z * rate;
  }
  return system;
}

MixtureResiduals correlated_mixture_derivative(const std::vector<CorrelatedComponent>& components,
                                               const CovarianceMatrix& cov) {
  const Eigen::Vector3d diag = cov.matrix().diagonal();
  const Eigen::Vector2d r = correlated_mixture_system(components) * diag;
  return {r(0), r(1)};
}

}  // namespace qecd
