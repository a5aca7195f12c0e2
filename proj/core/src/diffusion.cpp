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

#include "qecdecay/diffusion.hpp"

#include <cmath>

#include "qecdecay/errors.hpp"

namespace qecd {

void validate(const GradientDiffusionSpec& spec) {
  if (!std::isfinite(spec.wavenumber)) {
    throw Error(ErrorCode::parameter, "gradient wavenumber must be finite");
  }
  if (!(spec.diffusion_coefficient >= 0.0) || !std::isfinite(spec.diffusion_coefficient)) {
    throw Error(ErrorCode::parameter, "diffusion coefficient must be finite and >= 0");
  }
  if (!(spec.diffusion_time >= 0.0) || !std::isfinite(spec.diffusion_time)) {
    throw Error(ErrorCode::parameter, "diffusion time must be finite and >= 0");
  }
}

double gradient_wavenumber(double gyromagnetic_ratio, double gradient, double duration) {
  return gyromagnetic_ratio * gradient * duration;
}

double attenuation_factor(const GradientDiffusionSpec& spec, int coherence_order) {
  validate(spec);
  const double n2 = static_cast<double>(coherence_order) * coherence_order;
  const double sigma2 = spec.diffusion_coefficient * spec.diffusion_time;
  return std::exp(-0.5 * n2 * spec.wavenumber * spec.wavenumber * sigma2);
}

CovarianceMatrix spec_to_covariance(const GradientDiffusionSpec& spec) {
  validate(spec);
  const double rate = spec.wavenumber * spec.wavenumber * spec.diffusion_coefficient;
  if (spec.scheme == DiffusionScheme::totally_correlated) {
    return CovarianceMatrix(Eigen::Matrix3d::Constant(rate));
  }
  return CovarianceMatrix(rate * Eigen::Matrix3d::Identity());
}

double equivalent_rate(const GradientDiffusionSpec& spec) {
  validate(spec);
  return 0.5 * spec.wavenumber * spec.wavenumber * spec.diffusion_coefficient;
}

}  // namespace qecd
