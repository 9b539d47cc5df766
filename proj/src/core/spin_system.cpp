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
#include "core/spin_system.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace tripath {

std::string Spin::effective_species() const {
  if (!species.empty()) return species;
  std::string s = label;
  while (!s.empty() && std::isdigit(static_cast<unsigned char>(s.back()))) s.pop_back();
  return s.empty() ? label : s;
}

SpinSystem::SpinSystem(std::vector<Spin> s, Eigen::MatrixXd j) : spins(std::move(s)), j_hz(std::move(j)) {
  const auto n = static_cast<Eigen::Index>(spins.size());
  if (j_hz.size() == 0) j_hz = Eigen::MatrixXd::Zero(n, n);
  if (j_hz.rows() != n || j_hz.cols() != n)
    throw std::invalid_argument("SpinSystem: J table shape does not match spin count");
}

SpinSystem SpinSystem::subsystem(const std::vector<int>& indices) const {
  std::vector<Spin> sub;
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(indices.size(), indices.size());
  for (size_t a = 0; a < indices.size(); ++a) {
    sub.push_back(spins.at(indices[a]));
    for (size_t b = 0; b < indices.size(); ++b)
      if (a != b) j(a, b) = j_hz(indices[a], indices[b]);
  }
  return SpinSystem(std::move(sub), std::move(j));
}

Eigen::MatrixXcd build_hamiltonian(const SpinSystem& system, CouplingModel model, int max_spins) {
  const int n = system.size();
  if (n > max_spins)
    throw std::invalid_argument("build_hamiltonian: spin count exceeds dense-simulator limit");
  const int dim = 1 << n;
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);

  const double pi = two_pi / 2.0;
  for (int i = 0; i < n; ++i)
    h += pi * system.spins[i].offset_hz * op_on_qubit(pauli_z(), i, n);

  for (int i = 0; i < n; ++i) {
    for (int k = i + 1; k < n; ++k) {
      const double j = system.j(i, k);
      if (j == 0.0) continue;
      h += (pi / 2.0) * j *
           (op_on_qubit(pauli_z(), i, n) * op_on_qubit(pauli_z(), k, n));
      if (model == CouplingModel::strong) {
        h += (pi / 2.0) * j *
             (op_on_qubit(pauli_x(), i, n) * op_on_qubit(pauli_x(), k, n) +
              op_on_qubit(pauli_y(), i, n) * op_on_qubit(pauli_y(), k, n));
      }
    }
  }
  // Symmetrize so Hermiticity holds exactly, not just to rounding.
  h = ((h + h.adjoint()) / 2.0).eval();
  return h;
}

LevelGaps level_gaps(const SpinSystem& system) {
  if (system.size() != 2)
    throw std::invalid_argument("level_gaps: expected exactly the two computation spins");
  const double nu1 = system.spins[0].offset_hz;
  const double nu2 = system.spins[1].offset_hz;
  const double j = system.j(0, 1);

  auto energy_hz = [&](int a, int b) {
    const double sa = (a == 0) ? 1.0 : -1.0;
    const double sb = (b == 0) ? 1.0 : -1.0;
    return 0.5 * nu1 * sa + 0.5 * nu2 * sb + 0.25 * j * sa * sb;
  };

  const double e0 = energy_hz(0, 0);
  LevelGaps gaps;
  gaps.delta[0] = two_pi * (energy_hz(0, 1) - e0);  // |1> = |01>
  gaps.delta[1] = two_pi * (energy_hz(1, 0) - e0);  // |2> = |10>
  gaps.delta[2] = two_pi * (energy_hz(1, 1) - e0);  // |3> = |11>
  return gaps;
}

ValidationReport validate_system(const SpinSystem& system) {
  ValidationReport report;
  auto violation = [&](const std::string& msg) { report.violations.push_back(msg); };

  const int n = system.size();
  if (n < 2) violation("at least 2 spins required for the experiment core");

  for (int i = 0; i < n; ++i) {
    const Spin& s = system.spins[i];
    std::ostringstream who;
    who << "spin " << i << " (" << s.label << ")";
    if (!(s.t1_s > 0)) violation(who.str() + ": t1 > 0 violated");
    if (!(s.t2_s > 0)) violation(who.str() + ": t2 > 0 violated");
    if (s.t1_s > 0 && s.t2_s > 0 && s.t2_s > 2.0 * s.t1_s)
      violation(who.str() + ": t2 <= 2*t1 violated");
    if (!std::isfinite(s.offset_hz)) violation(who.str() + ": offset not finite");
  }

  if (system.j_hz.rows() == n && system.j_hz.cols() == n) {
    for (int i = 0; i < n; ++i) {
      if (system.j_hz(i, i) != 0.0) violation("j_couplings diagonal must be zero");
      for (int k = i + 1; k < n; ++k) {
        if (system.j_hz(i, k) != system.j_hz(k, i)) {
          violation("j_couplings table not symmetric");
          break;
        }
      }
    }
  } else {
    violation("j_couplings shape does not match spin count");
  }

  for (int i = 0; i < n; ++i) {
    for (int k = i + 1; k < n; ++k) {
      const double j = std::abs(system.j_hz(i, k));
      if (j == 0.0) continue;
      if (system.spins[i].effective_species() != system.spins[k].effective_species()) continue;
      const double sep = std::abs(system.spins[i].offset_hz - system.spins[k].offset_hz);
      if (sep / j < 10.0) {
        std::ostringstream msg;
        msg << "weak-coupling approximation questionable for " << system.spins[i].label << "-"
            << system.spins[k].label << ": |offset difference|/J = " << (sep / j) << " < 10";
        report.warnings.push_back(msg.str());
      }
    }
  }
  return report;
}

}  // namespace tripath
