/* Copyright 2026 The Tripath Authors. All Rights Reserved.
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at
    http://www.apache.org/licenses/LICENSE-2.0
Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

namespace tripath {

using cd = std::complex<double>;

inline constexpr double two_pi = 2.0 * std::numbers::pi;

inline Eigen::Matrix2cd pauli_id() { return Eigen::Matrix2cd::Identity(); }

inline Eigen::Matrix2cd pauli_x() {
  Eigen::Matrix2cd m;
  m << 0, 1, 1, 0;
  return m;
}

inline Eigen::Matrix2cd pauli_y() {
  Eigen::Matrix2cd m;
  m << cd(0, 0), cd(0, -1), cd(0, 1), cd(0, 0);
  return m;
}

// Z eigenvalue +1 for |0>. This sign convention is global.
inline Eigen::Matrix2cd pauli_z() {
  Eigen::Matrix2cd m;
  m << 1, 0, 0, -1;
  return m;
}

inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Embeds a single-qubit operator at tensor slot `slot` of an n-qubit register.
// Slot 0 is the most significant bit of the computational-basis index.
inline Eigen::MatrixXcd op_on_qubit(const Eigen::Matrix2cd& op, int slot, int n_qubits) {
  if (slot < 0 || slot >= n_qubits) throw std::invalid_argument("op_on_qubit: slot out of range");
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
  for (int q = 0; q < n_qubits; ++q)
    out = kron(out, q == slot ? Eigen::MatrixXcd(op) : Eigen::MatrixXcd(Eigen::Matrix2cd::Identity()));
  return out;
}

inline double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

inline bool is_hermitian(const Eigen::MatrixXcd& m, double tol = 1e-12) {
  return m.rows() == m.cols() && max_abs(m - m.adjoint()) <= tol;
}

inline bool is_unitary(const Eigen::MatrixXcd& u, double tol = 1e-10) {
  if (u.rows() != u.cols()) return false;
  Eigen::MatrixXcd g = u * u.adjoint();
  return max_abs(g - Eigen::MatrixXcd::Identity(u.rows(), u.cols())) <= tol;
}

// exp(A) for Hermitian A via eigendecomposition. Deterministic and exact for
// the diagonalizable generators used throughout the engine.
inline Eigen::MatrixXcd exp_hermitian_times(const Eigen::MatrixXcd& h, cd factor) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed");
  Eigen::VectorXcd phases = (factor * es.eigenvalues().cast<cd>().array()).exp();
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

// Tensors identity qubits onto the low (least significant) end of an operator.
inline Eigen::MatrixXcd pad_with_identity(const Eigen::MatrixXcd& op, int n_extra_qubits) {
  Eigen::MatrixXcd out = op;
  for (int q = 0; q < n_extra_qubits; ++q) out = kron(out, Eigen::Matrix2cd::Identity());
  return out;
}

}  // namespace tripath
