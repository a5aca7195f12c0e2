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

// Literal construction of the decode/correct table: T E[F_D[P]] T for the
// eight products P of 2 Iz^k, next to the closed-form right-hand sides.

#include <cmath>
#include <complex>

#include <Eigen/Core>

#include "oracles.hpp"
#include "qecdecay/gates.hpp"
#include "qecdecay/operators.hpp"

namespace qecd::testing {

class DecodeTableOracle {
 public:
  DecodeTableOracle(const Eigen::Matrix3d& c, double t) : c_(c), t_(t) {}

  /// Product of 2 Iz^k over the bits of mask (bit 0 -> spin 1).
  SpinOperator z_product(int mask) const {
    SpinOperator p = identity_operator();
    for (int k = 1; k <= 3; ++k)
      if (mask & (1 << (k - 1))) p = p * (2.0 * make_generator(k, Axis::z));
    return p;
  }

  /// Pairwise averaged factors attached to the z-product before decoding.
  SpinOperator f_c(int mask) const {
    SpinOperator coef = identity_operator();
    static constexpr int kPairs[3][2] = {{1, 2}, {1, 3}, {2, 3}};
    for (const auto& pr : kPairs) {
      if ((mask >> (pr[0] - 1) & 1) && (mask >> (pr[1] - 1) & 1)) {
        const SpinOperator xx = 4.0 * make_generator(pr[0], Axis::x) * make_generator(pr[1], Axis::x);
        coef = coef * expm(std::complex<double>(-t_ * c_(pr[0] - 1, pr[1] - 1), 0.0) * xx);
      }
    }
    return coef * z_product(mask);
  }

  /// F_D[P] = S F_C[S P S] S, with S P S located among the z-products.
  SpinOperator f_d(int mask) const {
    const SpinOperator s = encoder().unitary;
    const SpinOperator conj = s * z_product(mask) * s;
    for (int m = 0; m < 8; ++m) {
      if (max_abs_diff(conj, z_product(m)) < 1e-12) return s * f_c(m) * s;
    }
    return SpinOperator::Constant(std::nan(""));
  }

  SpinOperator decoded(int mask) const {
    const SpinOperator tof = toffoli().unitary;
    return tof * project_ancilla_diagonal(f_d(mask)) * tof;
  }

  SpinOperator expected(int mask) const {
    const double a = t_ * c_(0, 1), b = t_ * c_(0, 2), d = t_ * c_(1, 2);
    const double f123 = std::cosh(a) * std::cosh(b) * std::cosh(d) - std::sinh(a) * std::sinh(b) * std::sinh(d);
    const SpinOperator z1 = make_generator(1, Axis::z);
    const SpinOperator z12 = 2.0 * make_generator(1, Axis::z) * make_generator(2, Axis::z);
    const SpinOperator z13 = 2.0 * make_generator(1, Axis::z) * make_generator(3, Axis::z);
    const SpinOperator z123 = 4.0 * make_generator(1, Axis::z) * make_generator(2, Axis::z) * make_generator(3, Axis::z);
    switch (mask) {
      case 0b000: return identity_operator();
      case 0b001: return z1 + z12 + z13 - z123;
      case 0b010: return std::cosh(a) * z_product(0b010);
      case 0b100: return std::cosh(b) * z_product(0b100);
      case 0b011: return z1 + z12 - z13 + z123;
      case 0b101: return z1 - z12 + z13 + z123;
      case 0b110: return std::cosh(d) * z_product(0b110);
      case 0b111: return f123 * (-z1 + z12 + z13 + z123);
      default: return SpinOperator::Constant(std::nan(""));
    }
  }

 private:
  Eigen::Matrix3d c_;
  double t_;
};

}  // namespace qecd::testing
