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
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "core/control_pulse.hpp"
#include "core/quantum_engine.hpp"

namespace tripath {

/// Discrete distribution of multiplicative RF amplitudes, modeling the
/// residual inhomogeneity that survives RF selection.
struct RfEnsemble {
  std::vector<double> scale_factors;
  std::vector<double> weights;  // nonnegative, sum 1

  static RfEnsemble single();  // scale 1, weight 1: exact identity
  /// Gauss-Hermite quadrature nodes/weights for a normal distribution of
  /// relative width `sigma` around `mean`.
  static RfEnsemble gauss_hermite(double sigma, int n_points, double mean = 1.0);

  void validate() const;
};

/// Shot-to-shot signal fluctuations. RF amplitudes drift slowly between
/// experiments (quasi-static, one draw per shot); the reference-state signal
/// fluctuates because RF selection amplifies RF variation into the prepared
/// magnetization. `acquisition_sigma` is the fast per-acquisition noise that
/// remains when one experiment provides both readings.
struct FluctuationSpec {
  std::map<std::string, double> rf_sigma_by_species;  // relative std per channel
  double pps_signal_sigma = 0.0095;
  double pps_signal_worst = 0.02;  // hard clamp on the relative deviation
  double acquisition_sigma = 0.0095;
};

struct FluctuationDraw {
  std::map<std::string, double> rf_scale_by_species;
  double pps_factor = 1.0;
};

/// Finite impulse response applied to each channel's amplitude sequence,
/// modeling the mismatch between programmed and delivered pulse shapes.
struct DistortionSpec {
  std::vector<double> kernel{1.0};  // normalized to unit DC gain on use
  double residual_gain_error = 0.0;

  bool is_identity() const { return kernel.size() == 1 && residual_gain_error == 0.0; }
};

struct GateErrorSpec {
  double error_per_gate = 1e-3;  // depolarizing strength in [0, 1]
};

/// All channel amplitudes multiplied by `scale` (> 0).
ControlPulse apply_rf_scale(const ControlPulse& pulse, double scale);
/// Per-channel variant; species missing from the map keep scale 1.
ControlPulse apply_rf_scale(const ControlPulse& pulse,
                            const std::map<std::string, double>& scale_by_species);

/// Gaussian draws with the spec's sigmas; the reference factor deviation is
/// clamped to +-pps_signal_worst. Pure function of (spec, seed): channels are
/// drawn in species-sorted order, then the reference factor.
FluctuationDraw sample_fluctuations(const FluctuationSpec& spec, std::uint64_t seed);

/// Same-length convolution of each channel with the unit-DC kernel, then a
/// (1 + residual_gain_error) scale. Kernel mass that would fall outside the
/// slice range is folded into the boundary slice, so total pulse area per
/// channel is conserved exactly for any input.
ControlPulse distort(const ControlPulse& pulse, const DistortionSpec& spec);

/// Depolarizing map of the given strength: deviation states shrink uniformly
/// toward the zero matrix (the identity background absorbs the loss), full
/// states toward the maximally mixed state. Deterministic; the seed is
/// accepted for interface stability with stochastic channels.
DensityMatrix inject_gate_error(const DensityMatrix& rho, const GateErrorSpec& spec,
                                std::uint64_t seed = 0);

/// Weighted average of a scalar observable over the ensemble's RF scales.
double ensemble_average(const std::function<double(double)>& run, const RfEnsemble& ensemble);

}  // namespace tripath
