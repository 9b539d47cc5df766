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

#include <cstdint>
#include <vector>

#include "core/control_pulse.hpp"
#include "core/linalg.hpp"
#include "core/spin_system.hpp"

namespace tripath {

enum class GradientMode { exact, first_order, finite_difference };

struct OptimizerConfig {
  double fidelity_target = 0.9995;
  int max_iterations = 4000;
  GradientMode gradient_mode = GradientMode::exact;
  std::uint64_t seed = 0;

  double max_nutation_rad_s = two_pi * 15e3;
  double init_amplitude_rad_s = two_pi * 100.0;
  // Backtracking line search: first trial step sized so the largest amplitude
  // change is initial_step_rad_s; grown after accepts, halved on rejects.
  double initial_step_rad_s = two_pi * 50.0;
  int max_backtracks = 60;
  double fd_step_rad_s = 1e-2;  // finite-difference mode only
};

struct SynthesisResult {
  ControlPulse pulse;
  double fidelity = 0.0;  // recomputed from the returned pulse
  int iterations = 0;
  bool converged = false;
  std::vector<double> fidelity_trace;  // accepted steps only, non-decreasing
};

/// Ordered product over slices of exp(-i (H_drift + H_rf(slice)) dt).
/// Channel amplitudes drive every spin of the matching species through
/// (wx/2) X + (wy/2) Y; channels without matching spins contribute nothing.
Eigen::MatrixXcd propagator_from_pulse(const ControlPulse& pulse, const SpinSystem& system,
                                       CouplingModel model);

/// |Tr[u_app^dag u_goal]|^2 / N^2; global-phase invariant, in [0, 1].
double hs_fidelity(const Eigen::MatrixXcd& u_app, const Eigen::MatrixXcd& u_goal);

/// Derivative of hs_fidelity with respect to every control amplitude,
/// returned in the pulse's channel layout. `exact` differentiates each slice
/// propagator through its eigendecomposition; `first_order` uses the
/// standard small-dt approximation; `finite_difference` is the slow
/// reference used by tests.
std::vector<PulseChannel> fidelity_gradient(const ControlPulse& pulse,
                                            const Eigen::MatrixXcd& u_goal,
                                            const SpinSystem& system, CouplingModel model,
                                            GradientMode mode = GradientMode::exact,
                                            double fd_step_rad_s = 1e-2);

/// Gradient ascent with backtracking line search from the template's
/// amplitudes (channels with empty arrays are filled with seeded random
/// values). Stops at fidelity_target or max_iterations; non-convergence is
/// reported through `converged`, not an exception. Deterministic per seed.
///
/// A goal on fewer qubits than the system is lifted by tensoring identity
/// onto the trailing (probe) slots.
SynthesisResult synthesize(const Eigen::MatrixXcd& u_goal, const ControlPulse& template_pulse,
                           const OptimizerConfig& cfg, const SpinSystem& system,
                           CouplingModel model);

}  // namespace tripath
