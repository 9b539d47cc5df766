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

#include <array>
#include <string>
#include <vector>

#include "core/linalg.hpp"

namespace tripath {

/// One spin-1/2 nucleus of the register.
///
/// `offset_hz` is the chemical-shift offset relative to the transmitter of
/// its own channel. `species` groups spins that share an RF channel (all
/// carbons see the same pulse amplitudes); when empty it is derived from the
/// label by stripping trailing digits ("C1" -> "C").
struct Spin {
  std::string label;
  double offset_hz = 0.0;
  double t1_s = 1.0;
  double t2_s = 1.0;
  std::string species;

  std::string effective_species() const;
};

enum class CouplingModel { weak, strong };

/// Ordered spin register with a symmetric J-coupling table in Hz.
/// The list order fixes the tensor-product slot of each spin (slot 0 is the
/// most significant basis bit).
struct SpinSystem {
  std::vector<Spin> spins;
  Eigen::MatrixXd j_hz;  // symmetric, zero diagonal

  SpinSystem() = default;
  SpinSystem(std::vector<Spin> s, Eigen::MatrixXd j);

  int size() const { return static_cast<int>(spins.size()); }
  int dim() const { return 1 << spins.size(); }
  double j(int i, int k) const { return j_hz(i, k); }

  /// Sub-register over the given spin indices, J table restricted accordingly.
  SpinSystem subsystem(const std::vector<int>& indices) const;
};

/// Angular-frequency gaps (rad/s) between the three excited four-level
/// eigenstates and the ground level, under the fixed mapping
/// |1> = |01>, |2> = |10>, |3> = |11>.
struct LevelGaps {
  std::array<double, 3> delta{};  // rad/s

  double pair_frequency(int a, int b) const { return delta[b - 1] - delta[a - 1]; }
};

struct ValidationReport {
  std::vector<std::string> violations;
  std::vector<std::string> warnings;

  bool ok() const { return violations.empty(); }
  bool empty() const { return violations.empty() && warnings.empty(); }
};

/// Laboratory Hamiltonian in rad/s. Config files carry Hz; the 2*pi
/// conversion happens exactly once, here.
///
/// weak:    sum_i pi*nu_i*Z_i + sum_{i<k} (pi/2)*J_ik*Z_i Z_k   (diagonal)
/// strong:  weak plus (pi/2)*J_ik*(X_i X_k + Y_i Y_k) exchange terms
Eigen::MatrixXcd build_hamiltonian(const SpinSystem& system, CouplingModel model,
                                   int max_spins = 12);

/// Gaps for the two computation spins, from the weak-coupling diagonal
/// energies E(|ab>)/h = (nu1/2)(-1)^a + (nu2/2)(-1)^b + (J/4)(-1)^(a+b).
/// Throws unless the system has exactly two spins.
LevelGaps level_gaps(const SpinSystem& system);

/// Diagnostic invariant check; never throws. Weak-coupling validity is
/// flagged when min |nu_i - nu_k| / J_ik < 10 over same-species pairs
/// (offsets of different species are relative to different transmitters, so
/// cross-species differences carry no meaning).
ValidationReport validate_system(const SpinSystem& system);

}  // namespace tripath
