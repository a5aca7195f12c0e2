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

#include <complex>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace qecd {

using Complex = std::complex<double>;

inline constexpr int kNumSpins = 3;
inline constexpr int kDim = 8;

/// Operator on the three-spin space, spin 1 (the data spin) being the most
/// significant tensor factor. Basis order |d1 d2 d3>, d = 0 is the +1/2
/// eigenstate of I_z.
using SpinOperator = Eigen::Matrix<Complex, kDim, kDim>;
using QubitOperator = Eigen::Matrix<Complex, 2, 2>;

enum class Axis { x, y, z };
enum class Sign { plus, minus };

inline constexpr int sign_value(Sign s) noexcept { return s == Sign::plus ? 1 : -1; }

namespace tolerance {
/// Exact operator-algebra identities.
inline constexpr double kExact = 1e-12;
/// Results composed from a handful of matrix products and exponentials.
inline constexpr double kPipeline = 1e-9;
/// Smallest eigenvalue accepted for a density matrix is -kNegativeEigenvalue.
inline constexpr double kNegativeEigenvalue = 1e-9;
}  // namespace tolerance

SpinOperator identity_operator();

/// Pauli matrix sigma_axis (= 2I_axis on one spin).
QubitOperator pauli_matrix(Axis axis);

/// a (x) b (x) c with spin 1 most significant.
SpinOperator tensor(const QubitOperator& a, const QubitOperator& b, const QubitOperator& c);

/// Embeds a single-spin operator at position `spin` (1..3).
SpinOperator embed_single_spin(const QubitOperator& op, int spin);

/// Angular momentum operator I_axis^spin (eigenvalues +-1/2).
SpinOperator make_generator(int spin, Axis axis);

/// E_+^k = (1 + 2I_z^k)/2 and E_-^k = (1 - 2I_z^k)/2.
SpinOperator make_idempotent(int spin, Sign sign);

/// Normalized product operator from three labels in {'1','x','y','z'}, one per
/// spin; each non-identity factor contributes 2I_a^k. "zz1" -> 4 I_z^1 I_z^2.
SpinOperator product_operator(std::string_view labels);

/// All 64 product operators, labels enumerated with spin 3 fastest in the
/// order 1, x, y, z.
std::vector<SpinOperator> product_operator_basis();

/// Hermitian, unit-trace, positive semidefinite matrix of dimension N.
/// Construction validates; a violated invariant throws Error(domain).
template <int N>
class Density {
 public:
  using Matrix = Eigen::Matrix<Complex, N, N>;

  explicit Density(const Matrix& m);

  const Matrix& matrix() const noexcept { return m_; }
  Complex operator()(int row, int col) const { return m_(row, col); }

  /// Half the trace norm of the difference.
  double trace_distance(const Density& other) const;
  double purity() const;

 private:
  Matrix m_;
};

using DensityMatrix = Density<kDim>;
using ReducedDensityMatrix = Density<2>;

extern template class Density<kDim>;
extern template class Density<2>;

/// Expectation values of 2I_x, 2I_y, 2I_z for a single spin.
struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double norm() const noexcept;
};

/// Throws Error(domain) if the vector lies outside the unit ball.
void validate(const BlochVector& v);

/// 1/2 + x I_x... in the 2x2 picture: (1 + x sx + y sy + z sz) / 2.
QubitOperator qubit_operator_from_bloch(const BlochVector& v);

/// rho^1 (x) E^2_{s2} E^3_{s3}.
SpinOperator with_diagonal_ancillae(const QubitOperator& data, Sign ancilla2, Sign ancilla3);

/// Data spin in alpha|0> + beta|1>, ancillae in E_+^2 E_+^3.
/// Throws Error(normalization) unless |alpha|^2 + |beta|^2 = 1.
DensityMatrix make_pure_data_state(Complex alpha, Complex beta);

/// Trace over spins 2 and 3.
QubitOperator partial_trace_ancillae(const SpinOperator& op);
ReducedDensityMatrix partial_trace_ancillae(const DensityMatrix& rho);

/// Sum over the four ancilla idempotent pairs P = E^2_{+-} E^3_{+-} of P X P.
/// Leaves the partial trace over the ancillae unchanged.
SpinOperator project_ancilla_diagonal(const SpinOperator& op);

BlochVector bloch_of(const QubitOperator& rho);
BlochVector bloch_of(const ReducedDensityMatrix& rho);

/// Largest absolute entry of a - b.
template <typename Derived, typename Other>
double max_abs_diff(const Eigen::MatrixBase<Derived>& a, const Eigen::MatrixBase<Other>& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace qecd
