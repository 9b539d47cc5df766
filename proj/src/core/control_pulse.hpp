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

#include <string>
#include <vector>

namespace tripath {

/// In-phase/quadrature amplitude pair for one nuclear species. Amplitudes
/// are nutation angular frequencies in rad/s; every spin of the species sees
/// the same waveform, matching a shared hardware channel.
struct PulseChannel {
  std::string species;
  std::vector<double> x;  // rad/s
  std::vector<double> y;  // rad/s
};

/// Piecewise-constant multi-channel RF waveform.
struct ControlPulse {
  double duration_s = 0.0;
  int n_slices = 0;
  std::vector<PulseChannel> channels;

  double dt() const { return duration_s / n_slices; }
  const PulseChannel* channel(const std::string& species) const;

  /// Checks slice counts, duration and amplitude bounds; throws on misuse.
  void validate(double max_nutation_rad_s = 0.0) const;
};

/// Single-slice constant pulse rotating the given species by `angle` about
/// the axis at `phase` in the transverse plane: amplitude angle/duration.
/// Hard pulses are not subject to the shaped-pulse nutation limit.
ControlPulse hard_pulse(double angle_rad, double phase_rad, double duration_s,
                        const std::string& species);

/// Lossless JSON round trip at full float precision.
std::string pulse_to_json(const ControlPulse& pulse);
ControlPulse pulse_from_json(const std::string& text);
void save_pulse(const ControlPulse& pulse, const std::string& path);
ControlPulse load_pulse(const std::string& path);

}  // namespace tripath
