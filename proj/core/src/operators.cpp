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

#include "qecdecay/operators.hpp"

#include <array>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "qecdecay/errors.hpp"

namespace qecd {
namespace {

QubitOperator pauli(char label) {
  QubitOperator p;
  switch (label) {
    case '1': p << 1, 0, 0, 1; break;
    case 'x': p << 0, 1, 1, 0; break;
    case 'y': p << 0, Complex(0, -1), Complex(0, 1), 0; break;
    case 'z': p << 1, 0, 0, -1; break;
    default:
      throw Error(ErrorCode::parameter, std::string("unknown product-operator label '") + label + "'");
  }
  return p;
}

char axis_label(Axis axis) {
  switch (axis) {
    case Axis::x: return 'x';
    case Axis::y: return 'y';
    case Axis::z: return 'z';
  }
  return 'z';
}

void check_spin(int spin) {
  if (spin < 1 || spin > kNumSpins) {
    throw Error(ErrorCode::parameter, "spin index " + std::to_string(spin) + " outside 1..3");
  }
}

template <int A, int B>
Eigen::Matrix<Complex, A * B, A * B> kron(const Eigen::Matrix<Complex, A, A>& a,
                                          const Eigen::Matrix<Complex, B, B>& b) {
  Eigen::Matrix<Complex, A * B, A * B> out;
  for (int i = 0; i < A; ++i) {
    for (int j = 0; j < A; ++j) {
      out.template block<B, B>(i * B, j * B) = a(i, j) * b;
    }
  }
  return out;
}

SpinOperator kron3(const QubitOperator& a, const QubitOperator& b, const QubitOperator& c) {
  return kron<2, 4>(a, kron<2, 2>(b, c));
}

}  // namespace

SpinOperator identity_operator() { return SpinOperator::Identity(); }

QubitOperator pauli_matrix(Axis axis) { return pauli(axis_label(axis)); }

SpinOperator tensor(const QubitOperator& a, const QubitOperator& b, const QubitOperator& c) {
  return kron3(a, b, c);
}

SpinOperator embed_single_spin(const QubitOperator& op, int spin) {
  check_spin(spin);
  const QubitOperator id = QubitOperator::Identity();
  std::array<QubitOperator, 3> factors{id, id, id};
  factors[spin - 1] = op;
  return kron3(factors[0], factors[1], factors[2]);
}

SpinOperator make_generator(int spin, Axis axis) {
  return embed_single_spin(0.5 * pauli(axis_label(axis)), spin);
}

SpinOperator make_idempotent(int spin, Sign sign) {
  return 0.5 * (identity_operator() + double(sign_value(sign)) * 2.0 * make_generator(spin, Axis::z));
}

SpinOperator product_operator(std::string_view labels) {
  if (labels.size() != kNumSpins) {
    throw Error(ErrorCode::parameter, "product operator needs exactly three labels");
  }
  return kron3(pauli(labels[0]), pauli(labels[1]), pauli(labels[2]));
}

std::vector<SpinOperator> product_operator_basis() {
  static constexpr std::array<char, 4> kLabels{'1', 'x', 'y', 'z'};
  std::vector<SpinOperator> basis;
  basis.reserve(64);
  for (char a : kLabels) {
    for (char b : kLabels) {
      for (char c : kLabels) {
        const std::array<char, 3> l{a, b, c};
        basis.push_back(product_operator(std::string_view(l.data(), l.size())));
      }
    }
  }
  return basis;
}

template <int N>
Density<N>::Density(const Matrix& m) : m_(m) {
  const double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tolerance::kPipeline) {
    throw Error(ErrorCode::domain, "density matrix is not Hermitian (deviation " + std::to_string(herm) + ")");
  }
  const Complex tr = m.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > tolerance::kPipeline) {
    throw Error(ErrorCode::domain, "density matrix trace is " + std::to_string(tr.real()) + ", expected 1");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  const double lowest = eig.eigenvalues().minCoeff();
  if (lowest < -tolerance::kNegativeEigenvalue) {
    throw Error(ErrorCode::domain, "density matrix has negative eigenvalue " + std::to_string(lowest));
  }
}

template <int N>
double Density<N>::trace_distance(const Density& other) const {
  const Matrix diff = m_ - other.m_;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (diff + diff.adjoint()), Eigen::EigenvaluesOnly);
  return 0.5 * eig.eigenvalues().cwiseAbs().sum();
}

template <int N>
double Density<N>::purity() const {
  return (m_ * m_).trace().real();
}

template class Density<kDim>;
template class Density<2>;

double BlochVector::norm() const noexcept { return std::sqrt(x * x + y * y + z * z); }

void validate(const BlochVector& v) {
  if (!std::isfinite(v.x) || !std::isfinite(v.y) || !std::isfinite(v.z)) {
    throw Error(ErrorCode::domain, "Bloch vector has non-finite components");
  }
  if (v.norm() > 1.0 + tolerance::kPipeline) {
    throw Error(ErrorCode::domain, "Bloch vector length " + std::to_string(v.norm()) + " exceeds 1");
  }
}

QubitOperator qubit_operator_from_bloch(const BlochVector& v) {
  return 0.5 * (pauli('1') + v.x * pauli('x') + v.y * pauli('y') + v.z * pauli('z'));
}

SpinOperator with_diagonal_ancillae(const QubitOperator& data, Sign ancilla2, Sign ancilla3) {
  const auto idem = [](Sign s) {
    QubitOperator e = QubitOperator::Zero();
    e(s == Sign::plus ? 0 : 1, s == Sign::plus ? 0 : 1) = 1.0;
    return e;
  };
  return kron3(data, idem(ancilla2), idem(ancilla3));
}

DensityMatrix make_pure_data_state(Complex alpha, Complex beta) {
  const double norm2 = std::norm(alpha) + std::norm(beta);
  if (std::abs(norm2 - 1.0) > tolerance::kPipeline) {
    throw Error(ErrorCode::normalization,
                "|alpha|^2 + |beta|^2 = " + std::to_string(norm2) + ", expected 1");
  }
  const Complex ab = std::conj(alpha) * beta;
  const SpinOperator data = 0.5 * identity_operator() + ab.real() * 2.0 * make_generator(1, Axis::x) +
                            ab.imag() * 2.0 * make_generator(1, Axis::y) +
                            (std::norm(alpha) - std::norm(beta)) * make_generator(1, Axis::z);
  return DensityMatrix(data * make_idempotent(2, Sign::plus) * make_idempotent(3, Sign::plus));
}

QubitOperator partial_trace_ancillae(const SpinOperator& op) {
  QubitOperator out = QubitOperator::Zero();
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      for (int k = 0; k < 4; ++k) {
        out(a, b) += op(4 * a + k, 4 * b + k);
      }
    }
  }
  return out;
}

ReducedDensityMatrix partial_trace_ancillae(const DensityMatrix& rho) {
  return ReducedDensityMatrix(partial_trace_ancillae(rho.matrix()));
}

SpinOperator project_ancilla_diagonal(const SpinOperator& op) {
  SpinOperator out = SpinOperator::Zero();
  for (Sign s2 : {Sign::plus, Sign::minus}) {
    for (Sign s3 : {Sign::plus, Sign::minus}) {
      const SpinOperator p = make_idempotent(2, s2) * make_idempotent(3, s3);
      out += p * op * p;
    }
  }
  return out;
}

BlochVector bloch_of(const QubitOperator& rho) {
  return {(rho * pauli('x')).trace().real(), (rho * pauli('y')).trace().real(),
          (rho * pauli('z')).trace().real()};
}

BlochVector bloch_of(const ReducedDensityMatrix& rho) { return bloch_of(rho.matrix()); }

}  // namespace qecd
