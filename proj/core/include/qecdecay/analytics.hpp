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
#include <span>
#include <string_view>
#include <vector>

#include "qecdecay/noise.hpp"

namespace qecd {

/// Scalar building blocks of the corrected decay at time t:
/// F^j = exp(-t c^jj / 2), F^jk = cosh(t c^jk), and
/// F^123 = cosh cosh cosh - sinh sinh sinh of (t c^12, t c^13, t c^23).
struct DecayFactors {
  double f1 = 1.0;
  double f2 = 1.0;
  double f3 = 1.0;
  double f12 = 1.0;
  double f13 = 1.0;
  double f23 = 1.0;
  double f123 = 1.0;
};

DecayFactors decay_factors(const CovarianceMatrix& cov, double t);

/// Theta(t) = (F^1 + F^2 + F^3 - F^1 F^2 F^3 F^123) / 2, the factor by which
/// the y and z Bloch components of the data spin survive error correction.
/// F1 F2 F3 F123, evaluated without cancellation.
double triple_decay_product(const CovarianceMatrix& cov, double t);

double theta_general(const CovarianceMatrix& cov, double t);

/// (3 e^{-t/tau} - e^{-3t/tau}) / 2
double theta_uncorrelated(double t, double tau);
/// (9 e^{-t/tau} - e^{-9t/tau}) / 8
double theta_correlated(double t, double tau);
double theta_model(CovarianceModel model, double t, double tau);

/// exp(-t c^11 / 2): decay of the data spin's y and z components without
/// encoding or correction.
double uncorrected_decay(const CovarianceMatrix& cov, double t);

struct ThetaDerivatives {
  double first = 0.0;
  double second = 0.0;
  double third = 0.0;
};

/// Derivatives of Theta at t = 0. The first vanishes for every covariance;
/// second = -(2(c12^2 + c13^2 + c23^2) + c11 c22 + c11 c33 + c22 c33) / 4.
/// The third uses the permutation-symmetric form
///   (3 c11^2 (c22+c33) + 3 c22^2 (c11+c33) + 3 c33^2 (c11+c22)
///    + 6 c11 c22 c33 + 12 (c12^2+c13^2+c23^2)(c11+c22+c33) + 48 c12 c13 c23) / 16,
/// which is what direct differentiation of theta_general gives.
ThetaDerivatives theta_derivatives_at_zero(const CovarianceMatrix& cov);

/// The same third-derivative expression with its c33 term written as
/// 3 c33^2 (c22 + c33). Differs from the true value by 3 c33^2 (c11 - c33) / 16;
/// kept for comparison runs.
double third_derivative_asymmetric(const CovarianceMatrix& cov);

/// ln(3) tau / 2 (uncorrelated) or ln(3) tau / 4 (totally correlated).
double inflection_point(CovarianceModel model, double tau);

enum class Provenance { analytic, monte_carlo, fitted, measured };

std::string_view to_string(Provenance p) noexcept;

/// Sampled decay curve. Times must be finite and strictly increasing and the
/// two series equally long; violations throw Error(domain).
class DecayCurve {
 public:
  DecayCurve(std::vector<double> times, std::vector<double> values, Provenance provenance);

  const std::vector<double>& times() const noexcept { return times_; }
  const std::vector<double>& values() const noexcept { return values_; }
  Provenance provenance() const noexcept { return provenance_; }
  std::size_t size() const noexcept { return times_.size(); }

 private:
  std::vector<double> times_;
  std::vector<double> values_;
  Provenance provenance_;
};

struct FitResult {
  /// 1/tau, the negated slope of ln(value) against t.
  double rate = 0.0;
  double intercept = 0.0;
  /// Pearson correlation of (t, ln value); 0 when ln value is constant.
  double correlation_coefficient = 0.0;
};

/// Ordinary least squares of ln(value) on t. Throws Error(domain) for
/// nonpositive values or fewer than two points.
FitResult fit_exponential_rate(const DecayCurve& curve);

/// Closed-form corrected decay for the given model and rate 1/tau.
/// Throws Error(parameter) unless rate > 0.
DecayCurve predict_corrected_curve(double rate, CovarianceModel model, std::span<const double> times);

/// Scales `measured` so its root-mean-square equals that of `reference`.
/// Throws Error(alignment) if the time grids differ and Error(parameter) if
/// the reference is identically zero.
DecayCurve scale_to_rms(const DecayCurve& measured, const DecayCurve& reference);

/// Pearson correlation coefficient; throws Error(alignment) on length mismatch.
double correlation_coefficient(std::span<const double> a, std::span<const double> b);

/// `points` equally spaced times from 0 to tmax inclusive.
std::vector<double> uniform_grid(double tmax, std::size_t points);

}  // namespace qecd
