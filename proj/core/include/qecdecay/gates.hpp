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

#include <span>
#include <string>
#include <vector>

#include "qecdecay/operators.hpp"

namespace qecd {

struct Gate {
  std::string name;
  SpinOperator unitary;
};

/// exp(-i angle H) for Hermitian H.
SpinOperator propagator(const SpinOperator& hamiltonian, double angle);

/// U X U^dagger.
SpinOperator conjugate(const SpinOperator& u, const SpinOperator& x);

bool is_unitary(const SpinOperator& u, double tol = tolerance::kExact);

/// True when b = e^{i phi} a for some phase, entrywise to `tol`.
bool equal_up_to_phase(const SpinOperator& a, const SpinOperator& b, double tol = tolerance::kExact);

/// True when `u` commutes with every data-spin generator, i.e. it acts on the
/// ancillae alone (a global phase included).
bool acts_on_ancillae_only(const SpinOperator& u, double tol = tolerance::kExact);

/// S^{target|control} = 2I_x^target E_-^control + E_+^control.
/// Throws Error(invalid_gate) when target == control.
Gate cnot(int target, int control);

/// S^{23|1} = 4I_x^2 I_x^3 E_-^1 + E_+^1, the product of the two c-NOTs
/// controlled by the data spin. Used for both encoding and decoding.
Gate encoder();

/// T^{1|23} = 2I_x^1 E_-^2 E_-^3 + (1 - E_-^2 E_-^3): flips the data spin
/// when both ancillae are in the E_- (|1>) sector.
Gate toffoli();

/// exp(-i angle sum_{k in spins} I_axis^k). Conjugation by the y rotation
/// with angle pi/2 maps I_z -> I_x and I_x -> -I_z.
Gate global_rotation(Axis axis, double angle, std::span<const int> spins);
Gate global_rotation(Axis axis, double angle);

/// Eight mutually commuting factors whose ordered product is T^{1|23}
/// (exactly, including the e^{i pi/8} phase):
///   e^{i pi/8} e^{-i pi/4 I_x^1} e^{-i pi/4 I_z^2} e^{-i pi/4 I_z^3}
///   e^{i pi/2 I_x^1 I_z^2} e^{i pi/2 I_x^1 I_z^3} e^{i pi/2 I_z^2 I_z^3}
///   e^{-i pi I_x^1 I_z^2 I_z^3}
std::vector<Gate> toffoli_product_expansion();

/// factors[0] * factors[1] * ... * factors[n-1].
SpinOperator ordered_product(std::span<const Gate> factors);

}  // namespace qecd
