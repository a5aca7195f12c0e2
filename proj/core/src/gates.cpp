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

#include "qecdecay/gates.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "qecdecay/errors.hpp"

namespace qecd {

SpinOperator propagator(const SpinOperator& hamiltonian, double angle) {
  Eigen::SelfAdjointEigenSolver<SpinOperator> eig(0.5 * (hamiltonian + hamiltonian.adjoint()));
  Eigen::Matrix<Complex, kDim, 1> phases;
  for (int i = 0; i < kDim; ++i) {
    phases(i) = std::polar(1.0, -angle * eig.eigenvalues()(i));
  }
  return eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
}

SpinOperator conjugate(const SpinOperator& u, const SpinOperator& x) { return u * x * u.adjoint(); }

bool is_unitary(const SpinOperator& u, double tol) {
  return max_abs_diff(u * u.adjoint(), identity_operator()) < tol;
}

bool equal_up_to_phase(const SpinOperator& a, const SpinOperator& b, double tol) {
  const Complex overlap = (a.adjoint() * b).trace();
  if (std::abs(overlap) < tol) {
    return a.cwiseAbs().maxCoeff() < tol && b.cwiseAbs().maxCoeff() < tol;
  }
  const Complex phase = overlap / std::abs(overlap);
  return max_abs_diff(b, phase * a) < tol;
}

bool acts_on_ancillae_only(const SpinOperator& u, double tol) {
  for (Axis axis : {Axis::x, Axis::y, Axis::z}) {
    const SpinOperator g = make_generator(1, axis);
    if ((u * g - g * u).cwiseAbs().maxCoeff() > tol) {
      return false;
    }
  }
  return true;
}

Gate cnot(int target, int control) {
  if (target == control) {
    throw Error(ErrorCode::invalid_gate, "c-NOT target and control are both spin " + std::to_string(target));
  }
  SpinOperator u = 2.0 * make_generator(target, Axis::x) * make_idempotent(control, Sign::minus) +
                   make_idempotent(control, Sign::plus);
  return {"S^{" + std::to_string(target) + "|" + std::to_string(control) + "}", std::move(u)};
}

Gate encoder() {
  SpinOperator u = 4.0 * make_generator(2, Axis::x) * make_generator(3, Axis::x) *
                       make_idempotent(1, Sign::minus) +
                   make_idempotent(1, Sign::plus);
  return {"S^{23|1}", std::move(u)};
}

Gate toffoli() {
  const SpinOperator ee = make_idempotent(2, Sign::minus) * make_idempotent(3, Sign::minus);
  SpinOperator u = 2.0 * make_generator(1, Axis::x) * ee + (identity_operator() - ee);
  return {"T^{1|23}", std::move(u)};
}

Gate global_rotation(Axis axis, double angle, std::span<const int> spins) {
  SpinOperator h = SpinOperator::Zero();
  std::string label;
  for (int k : spins) {
    h += make_generator(k, axis);
    label += std::to_string(k);
  }
  const char* axis_name = axis == Axis::x ? "x" : axis == Axis::y ? "y" : "z";
  return {std::string("R_") + axis_name + "(" + std::to_string(angle) + ")[" + label + "]",
          propagator(h, angle)};
}

Gate global_rotation(Axis axis, double angle) {
  static constexpr int kAll[] = {1, 2, 3};
  return global_rotation(axis, angle, kAll);
}

std::vector<Gate> toffoli_product_expansion() {
  using std::numbers::pi;
  const SpinOperator ix1 = make_generator(1, Axis::x);
  const SpinOperator iz2 = make_generator(2, Axis::z);
  const SpinOperator iz3 = make_generator(3, Axis::z);
  // propagator(H, a) = exp(-i a H)
  return {
      {"e^{i pi/8}", std::polar(1.0, pi / 8) * identity_operator()},
      {"e^{-i pi/4 Ix1}", propagator(ix1, pi / 4)},
      {"e^{-i pi/4 Iz2}", propagator(iz2, pi / 4)},
      {"e^{-i pi/4 Iz3}", propagator(iz3, pi / 4)},
      {"e^{i pi/2 Ix1 Iz2}", propagator(ix1 * iz2, -pi / 2)},
      {"e^{i pi/2 Ix1 Iz3}", propagator(ix1 * iz3, -pi / 2)},
      {"e^{i pi/2 Iz2 Iz3}", propagator(iz2 * iz3, -pi / 2)},
      {"e^{-i pi Ix1 Iz2 Iz3}", propagator(ix1 * iz2 * iz3, pi)},
  };
}

SpinOperator ordered_product(std::span<const Gate> factors) {
  SpinOperator out = identity_operator();
  for (const Gate& g : factors) {
    out = out * g.unitary;
  }
  return out;
}

}  // namespace qecd
