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

#include "qecdecay/noise.hpp"

namespace qecd {

/// How the diffusion intervals dephase the three spins: one shared interval
/// (identical phase change for every spin in a molecule) or three independent
/// intervals, one per spin.
enum class DiffusionScheme { totally_correlated, uncorrelated };

/// Gradient-wound magnetization spiral relaxed by molecular diffusion.
/// A gradient of strength g applied for duration delta to nuclei with
/// gyromagnetic ratio gamma gives k0 = gamma g delta; for example 13C
/// (gamma = 6.728e7 rad/s/T) with g = 0.357 T/m and delta = 2.5 ms yields
/// k0 ~ 6.0e4 rad/m.
struct GradientDiffusionSpec {
  double wavenumber = 0.0;             ///< k0, rad/m
  double diffusion_coefficient = 0.0;  ///< D, m^2/s
  double diffusion_time = 0.0;         ///< t, s
  DiffusionScheme scheme = DiffusionScheme::totally_correlated;
};

/// Throws Error(parameter) for negative or non-finite D or t, or non-finite k0.
void validate(const GradientDiffusionSpec& spec);

/// k0 = gamma g delta.
double gradient_wavenumber(double gyromagnetic_ratio, double gradient, double duration);

/// Echo amplitude of an n-quantum coherence: exp(-n^2 k0^2 sigma^2 / 2) with
/// sigma^2 = D t. Equal to 1 for n = 0.
double attenuation_factor(const GradientDiffusionSpec& spec, int coherence_order);

/// Rate matrix producing the same decay through the dephasing channel:
/// every entry k0^2 D (totally correlated) or k0^2 D on the diagonal only
/// (uncorrelated), i.e. 1/tau = k0^2 D / 2.
CovarianceMatrix spec_to_covariance(const GradientDiffusionSpec& spec);

/// 1/tau = k0^2 D / 2.
double equivalent_rate(const GradientDiffusionSpec& spec);

}  // namespace qecd
