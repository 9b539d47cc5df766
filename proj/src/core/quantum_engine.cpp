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
#include "core/quantum_engine.hpp"

#include <cmath>

namespace tripath {

int DensityMatrix::n_qubits() const {
  int n = 0;
  while ((1 << n) < dim()) ++n;
  if ((1 << n) != dim()) throw std::logic_error("DensityMatrix: dimension is not a power of two");
  return n;
}

DensityMatrix pps_deviation(int n_qubits) {
  if (n_qubits < 2) throw std::invalid_argument("pps_deviation: need >= 2 qubits (last is the probe)");
  const int dim = 1 << n_qubits;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  // |0...0><0...0| on the first n-1 qubits places X in the top-left 2x2 block.
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  return DensityMatrix{std::move(m), StateKind::deviation};
}

Eigen::MatrixXcd free_propagator(const Eigen::MatrixXcd& h, double t_s) {
  if (t_s < 0) throw std::invalid_argument("free_propagator: negative time");
  if (!is_hermitian(h, 1e-9 * std::max(1.0, max_abs(h))))
    throw std::invalid_argument("free_propagator: generator is not Hermitian");
  return exp_hermitian_times(h, cd(0, -t_s));
}

DensityMatrix apply_unitary(const DensityMatrix& rho, const Eigen::MatrixXcd& u) {
  if (u.rows() != rho.dim() || u.cols() != rho.dim())
    throw std::invalid_argument("apply_unitary: dimension mismatch");
  return DensityMatrix{u * rho.entries * u.adjoint(), rho.kind};
}

DensityMatrix apply_relaxation(const DensityMatrix& rho, double t_s, const SpinSystem& system) {
  if (t_s < 0) throw std::invalid_argument("apply_relaxation: negative time");
  if (system.dim() != rho.dim())
    throw std::invalid_argument("apply_relaxation: system does not match state dimension");
  if (t_s == 0) return rho;

  const int n = system.size();
  const int dim = rho.dim();
  Eigen::MatrixXcd m = rho.entries;

  // The per-spin damping maps commute, so they are applied sequentially.
  for (int spin = 0; spin < n; ++spin) {
    const double f2 = std::exp(-t_s / system.spins[spin].t2_s);
    const double f1 = std::exp(-t_s / system.spins[spin].t1_s);
    const int bit = 1 << (n - 1 - spin);  // slot 0 is the most significant bit

    for (int r = 0; r < dim; ++r) {
      for (int c = 0; c < dim; ++c) {
        const bool rb = r & bit;
        const bool cb = c & bit;
        if (rb != cb) {
          m(r, c) *= f2;  // transverse: single-spin coherence on this spin
        } else if (!rb) {
          // Longitudinal: mix the population pair (identity part fixed, Z
          // part damped toward zero / the maximally mixed background).
          const cd a = m(r, c);
          const cd b = m(r | bit, c | bit);
          const cd avg = 0.5 * (a + b);
          const cd dif = 0.5 * (a - b) * f1;
          m(r, c) = avg + dif;
          m(r | bit, c | bit) = avg - dif;
        }
      }
    }
  }
  return DensityMatrix{std::move(m), rho.kind};
}

double measure_magnetization(const DensityMatrix& rho) {
  if (rho.dim() < 4) throw std::invalid_argument("measure_magnetization: need >= 2 qubits");
  // Tr[rho (|0..0><0..0| (x) X)] picks the two top-left off-diagonals.
  const cd overlap = rho.entries(0, 1) + rho.entries(1, 0);
  return overlap.real() / 2.0;
}

}  // namespace tripath
