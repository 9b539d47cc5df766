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

#include "core/linalg.hpp"
#include "core/spin_system.hpp"

namespace tripath {

/// `full` states are trace-1 positive operators; `deviation` states are the
/// traceless part of an ensemble state, which carries all observable signal.
/// All experiment states are deviation-kind; full-kind exists for unit tests
/// and the 2-spin reduced pipeline.
enum class StateKind { full, deviation };

struct DensityMatrix {
  Eigen::MatrixXcd entries;
  StateKind kind = StateKind::full;

  int dim() const { return static_cast<int>(entries.rows()); }
  int n_qubits() const;
  double trace_real() const { return entries.trace().real(); }
};

/// Deviation state |0...0><0...0| (x) X with the probe on the last slot.
/// Requires n_qubits >= 2.
DensityMatrix pps_deviation(int n_qubits);

/// exp(-i*h*t) for Hermitian h (rad/s) via eigendecomposition; throws on
/// non-Hermitian input or t < 0.
Eigen::MatrixXcd free_propagator(const Eigen::MatrixXcd& h, double t_s);

/// U rho U^dag; preserves kind, trace and Hermiticity.
DensityMatrix apply_unitary(const DensityMatrix& rho, const Eigen::MatrixXcd& u);

/// Phenomenological product-operator damping: every single-spin coherence
/// decays as exp(-t/T2), every polarization relaxes with rate 1/T1. The
/// deviation-kind fixed point is the zero matrix; for full-kind states the
/// identity background is untouched, so the trace is preserved.
DensityMatrix apply_relaxation(const DensityMatrix& rho, double t_s, const SpinSystem& system);

/// Tr[rho (|0..0><0..0| (x) X)] / Tr[(|0..0><0..0| (x) X)^2].
///
/// The denominator equals 2 for any register size; dividing by it makes the
/// reference deviation state read exactly 1, so signal ratios equal
/// probabilities with no further constant.
double measure_magnetization(const DensityMatrix& rho);

}  // namespace tripath
