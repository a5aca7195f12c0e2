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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "qecdecay/noise.hpp"
#include "qecdecay/operators.hpp"

namespace qecd {

/// Diagonal ancilla state mu_pp E+E+ + mu_pm E+E- + mu_mp E-E+ + mu_mm E-E-,
/// first sign for spin 2.
struct AncillaMixture {
  double mu_pp = 1.0;
  double mu_pm = 0.0;
  double mu_mp = 0.0;
  double mu_mm = 0.0;

  double weight(Sign ancilla2, Sign ancilla3) const noexcept;
};

/// Throws Error(config) unless every weight is >= 0 and they sum to 1 (1e-12).
void validate(const AncillaMixture& mix);

/// One term mu_m rho_m^1 E^2_{s2} E^3_{s3} of a data/ancilla mixture in which
/// the ancillae are classically correlated with the data spin.
struct CorrelatedComponent {
  double weight = 0.0;
  BlochVector data;
  Sign ancilla2 = Sign::plus;
  Sign ancilla3 = Sign::plus;
};

struct PureGroundAncillae {};

using AncillaPreparation =
    std::variant<PureGroundAncillae, AncillaMixture, std::vector<CorrelatedComponent>>;

/// Optional pi/2 y rotation of all spins after encoding (undone before
/// decoding), which turns the code into one protecting against z dephasing.
enum class BasisRotation { none, y_half_pi };

struct PipelineConfig {
  /// Initial data spin. Ignored when the ancillae are a correlated mixture,
  /// whose components carry their own data states.
  BlochVector data{0.0, 0.0, 1.0};
  AncillaPreparation ancillae = PureGroundAncillae{};
  NoiseChannel channel;
  bool correction = true;
  BasisRotation rotation = BasisRotation::none;
};

/// Bloch vector of alpha|0> + beta|1>; throws Error(normalization).
BlochVector bloch_from_amplitudes(Complex alpha, Complex beta);

/// Full three-spin state before encoding. Throws Error(config) on invalid
/// weights or Bloch vectors.
DensityMatrix initial_state(const PipelineConfig& config);

struct PipelineResult {
  ReducedDensityMatrix reduced;
  BlochVector bloch_in;
  BlochVector bloch_out;
  /// (y_out y_in + z_out z_in) / (y_in^2 + z_in^2); absent when the initial
  /// state has no y or z component.
  std::optional<double> theta;
};

/// prepare -> encode -> [rotate] -> decohere -> [unrotate] -> decode -> Toffoli
/// -> trace over the ancillae. With correction off only the channel is applied.
PipelineResult run_pipeline(const PipelineConfig& config, double t);

struct McPipelineResult {
  PipelineResult result;
  /// Standard errors of the averaged Bloch components and of theta.
  BlochVector bloch_stderr;
  std::optional<double> theta_stderr;
  std::size_t samples = 0;
};

/// Same pipeline, but each sample runs the whole unitary trajectory with one
/// drawn propagator before averaging. Bit-identical for fixed seed regardless
/// of `threads` (0 = hardware concurrency).
McPipelineResult run_pipeline_mc(const PipelineConfig& config, double t, std::size_t samples,
                                 std::uint64_t seed, unsigned threads = 0);

/// Theta'(t) = (F^1 + s2 F^2 + s3 F^3 - s23 F^1 F^2 F^3 F^123) / 2 with
/// s2 = mu_pp + mu_pm - mu_mp - mu_mm, s3 = mu_pp - mu_pm + mu_mp - mu_mm,
/// s23 = mu_pp - mu_pm - mu_mp + mu_mm.
double mixed_ancilla_theta(const AncillaMixture& mix, const CovarianceMatrix& cov, double t);

/// d Theta'/dt at t = 0:
/// ((mu_pp - 1) c11 - mu_pm (c11 + 2 c22) - mu_mp (c11 + 2 c33)
///  + mu_mm (c11 + 2 c22 + 2 c33)) / 4.
double mixed_ancilla_derivative_at_zero(const AncillaMixture& mix, const CovarianceMatrix& cov);

struct SimplexPoint {
  AncillaMixture mix;
  double derivative = 0.0;
  /// Theta'(0): 1 only when no weight sits on the E-E- sector.
  double theta_at_zero = 1.0;
};

struct NogoCertificate {
  /// Grid points with d Theta'(0) = 0 (to a tolerance scaled by |C|).
  std::vector<SimplexPoint> zeros;
  /// Zeros that additionally start at Theta'(0) = 1, i.e. genuine first-order
  /// protection.
  std::vector<SimplexPoint> protected_points;
  /// Values at the four vertices, in the order ++, +-, -+, --.
  std::vector<SimplexPoint> vertices;
  /// Smallest |d Theta'(0)| over grid points other than (1,0,0,0).
  double min_margin_off_ground = 0.0;
  AncillaMixture min_margin_point;
  std::size_t points_examined = 0;
  double zero_tolerance = 0.0;

  /// True when (1,0,0,0) is the only zero of the derivative on the grid.
  bool ground_is_unique_zero() const noexcept;
  /// True when (1,0,0,0) is the only protected grid point.
  bool ground_is_unique_protected() const noexcept;
};

/// Enumerates the simplex grid with spacing `step` (1/step must be an
/// integer). Throws Error(precondition) when c11 = 0, Error(parameter) for a
/// bad step.
NogoCertificate mixed_ancilla_nogo_search(const CovarianceMatrix& cov, double step);

/// Rows (y, z), columns (c11, c22, c33): the two linear conditions for a
/// vanishing first derivative of a correlated data/ancilla mixture.
/// Throws Error(config) for invalid components.
Eigen::Matrix<double, 2, 3> correlated_mixture_system(const std::vector<CorrelatedComponent>& components);

struct MixtureResiduals {
  double y = 0.0;
  double z = 0.0;
};

/// correlated_mixture_system(components) * (c11, c22, c33): the t = 0
/// derivatives of the corrected y and z components. Both vanish iff the
/// mixture is protected to first order.
MixtureResiduals correlated_mixture_derivative(const std::vector<CorrelatedComponent>& components,
                                               const CovarianceMatrix& cov);

}  // namespace qecd
