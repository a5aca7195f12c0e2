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

#include "qecdecay/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qecdecay/errors.hpp"

namespace qecd {

DecayFactors decay_factors(const CovarianceMatrix& cov, double t) {
  const auto& c = cov.matrix();
  DecayFactors f;
  f.f1 = std::exp(-0.5 * t * c(0, 0));
  f.f2 = std::exp(-0.5 * t * c(1, 1));
  f.f3 = std::exp(-0.5 * t * c(2, 2));
  const double a = t * c(0, 1);
  const double b = t * c(0, 2);
  const double d = t * c(1, 2);
  f.f12 = std::cosh(a);
  f.f13 = std::cosh(b);
  f.f23 = std::cosh(d);
  // cosh cosh cosh - sinh sinh sinh, summed as exponentials to avoid cancellation
  f.f123 = 0.25 * (std::exp(-a - b - d) + std::exp(a + b - d) + std::exp(a - b + d) + std::exp(-a + b + d));
  return f;
}

double triple_decay_product(const CovarianceMatrix& cov, double t) {
  const auto& c = cov.matrix();
  // Exponents merged before exponentiating; the separate factors reach
  // e^{+-tc} and lose digits at large t.
  const double s = -0.5 * t * (c(0, 0) + c(1, 1) + c(2, 2));
  const double a = t * c(0, 1), b = t * c(0, 2), d = t * c(1, 2);
  return 0.25 * (std::exp(s - a - b - d) + std::exp(s + a + b - d) + std::exp(s + a - b + d) +
                 std::exp(s - a + b + d));
}

double theta_general(const CovarianceMatrix& cov, double t) {
  const DecayFactors f = decay_factors(cov, t);
  return 0.5 * (f.f1 + f.f2 + f.f3 - triple_decay_product(cov, t));
}

double theta_uncorrelated(double t, double tau) {
  const double x = t / tau;
  return 0.5 * (3.0 * std::exp(-x) - std::exp(-3.0 * x));
}

double theta_correlated(double t, double tau) {
  const double x = t / tau;
  return (9.0 * std::exp(-x) - std::exp(-9.0 * x)) / 8.0;
}

double theta_model(CovarianceModel model, double t, double tau) {
  return model == CovarianceModel::uncorrelated ? theta_uncorrelated(t, tau) : theta_correlated(t, tau);
}

double uncorrected_decay(const CovarianceMatrix& cov, double t) { return std::exp(-0.5 * t * cov(0, 0)); }

ThetaDerivatives theta_derivatives_at_zero(const CovarianceMatrix& cov) {
  const auto& c = cov.matrix();
  const double c11 = c(0, 0), c22 = c(1, 1), c33 = c(2, 2);
  const double c12 = c(0, 1), c13 = c(0, 2), c23 = c(1, 2);
  const double cross_sq = c12 * c12 + c13 * c13 + c23 * c23;
  ThetaDerivatives d;
  d.first = 0.0;
  d.second = -0.25 * (2.0 * cross_sq + c11 * c22 + c11 * c33 + c22 * c33);
  d.third = (3.0 * c11 * c11 * (c22 + c33) + 3.0 * c22 * c22 * (c11 + c33) + 3.0 * c33 * c33 * (c11 + c22) +
             6.0 * c11 * c22 * c33 + 12.0 * cross_sq * (c11 + c22 + c33) + 48.0 * c12 * c13 * c23) /
            16.0;
  return d;
}

double third_derivative_asymmetric(const CovarianceMatrix& cov) {
  const auto& c = cov.matrix();
  const double c11 = c(0, 0), c22 = c(1, 1), c33 = c(2, 2);
  const double c12 = c(0, 1), c13 = c(0, 2), c23 = c(1, 2);
  const double cross_sq = c12 * c12 + c13 * c13 + c23 * c23;
  return (3.0 * c11 * c11 * (c22 + c33) + 3.0 * c22 * c22 * (c11 + c33) + 3.0 * c33 * c33 * (c22 + c33) +
          6.0 * c11 * c22 * c33 + 12.0 * cross_sq * (c11 + c22 + c33) + 48.0 * c12 * c13 * c23) /
         16.0;
}

double inflection_point(CovarianceModel model, double tau) {
  if (!(tau > 0.0)) {
    throw Error(ErrorCode::parameter, "tau must be > 0");
  }
  const double ln3 = std::log(3.0);
  return model == CovarianceModel::uncorrelated ? ln3 * tau / 2.0 : ln3 * tau / 4.0;
}

std::string_view to_string(Provenance p) noexcept {
  switch (p) {
    case Provenance::analytic: return "analytic";
    case Provenance::monte_carlo: return "monte-carlo";
    case Provenance::fitted: return "fitted";
    case Provenance::measured: return "measured";
  }
  return "unknown";
}

DecayCurve::DecayCurve(std::vector<double> times, std::vector<double> values, Provenance provenance)
    : times_(std::move(times)), values_(std::move(values)), provenance_(provenance) {
  if (times_.size() != values_.size()) {
    throw Error(ErrorCode::domain, "decay curve has " + std::to_string(times_.size()) + " times but " +
                                       std::to_string(values_.size()) + " values");
  }
  for (std::size_t i = 0; i < times_.size(); ++i) {
    if (!std::isfinite(times_[i]) || !std::isfinite(values_[i])) {
      throw Error(ErrorCode::domain, "decay curve has a non-finite entry at row " + std::to_string(i));
    }
    if (i > 0 && !(times_[i] > times_[i - 1])) {
      throw Error(ErrorCode::domain, "decay curve times are not strictly increasing at row " + std::to_string(i));
    }
  }
}

double correlation_coefficient(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::alignment, "correlation needs equally long series");
  }
  const double n = static_cast<double>(a.size());
  if (a.empty()) {
    return 0.0;
  }
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
  const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - ma;
    const double db = b[i] - mb;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (saa == 0.0 || sbb == 0.0) {
    return 0.0;
  }
  return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

FitResult fit_exponential_rate(const DecayCurve& curve) {
  if (curve.size() < 2) {
    throw Error(ErrorCode::domain, "log-linear fit needs at least two points");
  }
  std::vector<double> logs(curve.size());
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const double v = curve.values()[i];
    if (!(v > 0.0)) {
      throw Error(ErrorCode::domain, "log-linear fit needs positive values; row " + std::to_string(i) +
                                         " has " + std::to_string(v));
    }
    logs[i] = std::log(v);
  }
  const auto& t = curve.times();
  const double n = static_cast<double>(t.size());
  const double mt = std::accumulate(t.begin(), t.end(), 0.0) / n;
  const double ml = std::accumulate(logs.begin(), logs.end(), 0.0) / n;
  double stl = 0.0, stt = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    stl += (t[i] - mt) * (logs[i] - ml);
    stt += (t[i] - mt) * (t[i] - mt);
  }
  const double slope = stl / stt;
  FitResult fit;
  fit.rate = -slope;
  fit.intercept = ml - slope * mt;
  fit.correlation_coefficient = correlation_coefficient(t, logs);
  return fit;
}

DecayCurve predict_corrected_curve(double rate, CovarianceModel model, std::span<const double> times) {
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    throw Error(ErrorCode::parameter, "decay rate must be finite and > 0");
  }
  const double tau = 1.0 / rate;
  std::vector<double> values;
  values.reserve(times.size());
  for (double t : times) {
    values.push_back(theta_model(model, t, tau));
  }
  return DecayCurve(std::vector<double>(times.begin(), times.end()), std::move(values), Provenance::analytic);
}

DecayCurve scale_to_rms(const DecayCurve& measured, const DecayCurve& reference) {
  if (measured.times() != reference.times()) {
    throw Error(ErrorCode::alignment, "measured and reference curves use different time grids");
  }
  const auto sum_sq = [](const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0, [](double acc, double x) { return acc + x * x; });
  };
  const double ref = sum_sq(reference.values());
  if (ref == 0.0) {
    throw Error(ErrorCode::parameter, "reference curve is identically zero");
  }
  const double meas = sum_sq(measured.values());
  std::vector<double> values = measured.values();
  if (meas > 0.0) {
    const double scale = std::sqrt(ref / meas);
    for (double& v : values) {
      v *= scale;
    }
  }
  return DecayCurve(measured.times(), std::move(values), measured.provenance());
}

std::vector<double> uniform_grid(double tmax, std::size_t points) {
  if (points == 0 || !(tmax >= 0.0) || !std::isfinite(tmax)) {
    throw Error(ErrorCode::parameter, "time grid needs points >= 1 and finite tmax >= 0");
  }
  if (points == 1) {
    return {0.0};
  }
  if (tmax == 0.0) {
    throw Error(ErrorCode::parameter, "time grid with more than one point needs tmax > 0");
  }
  std::vector<double> grid(points);
  for (std::size_t i = 0; i < points; ++i) {
    grid[i] = tmax * static_cast<double>(i) / static_cast<double>(points - 1);
  }
  return grid;
}

}  // namespace qecd
