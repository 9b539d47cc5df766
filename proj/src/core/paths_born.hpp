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
#include <optional>
#include <string>

#include "core/linalg.hpp"
#include "core/spin_system.hpp"

namespace tripath {

/// Three-bit path configuration g1 g2 g3; bit k is 1 iff path k is open.
/// 000 is the all-blocked background configuration. Reports enumerate the
/// eight values in canonical binary order 000, 001, ..., 111.
class SlitConfig {
 public:
  SlitConfig() = default;
  explicit SlitConfig(int index);
  static SlitConfig from_string(const std::string& bits);

  bool open(int path) const { return (index_ >> (3 - path)) & 1; }  // path in 1..3
  int open_count() const;
  int index() const { return index_; }
  std::string to_string() const;

  bool operator==(const SlitConfig&) const = default;

  static std::array<SlitConfig, 8> all();

 private:
  int index_ = 0;  // g1*4 + g2*2 + g3
};

/// Four-level encoding of a slit pattern: beta on |0>, and 0 or 1/sqrt(3) on
/// each path level |1>, |2>, |3>; beta absorbs the blocked-path amplitude so
/// the state stays normalized.
struct SlitState {
  double beta = 1.0;
  std::array<cd, 3> amps{};  // amplitudes on |1>, |2>, |3>

  double norm() const;
  Eigen::Vector4cd as_vector() const;
};

/// Probabilities for all eight configurations at one evolution time.
struct PathProbabilities {
  double tau_s = 0.0;
  std::array<double, 8> p{};  // indexed by SlitConfig::index()

  double operator[](SlitConfig g) const { return p[g.index()]; }
  double& operator[](SlitConfig g) { return p[g.index()]; }
};

/// Two- and three-path interference at one tau, plus the kappa ratio.
/// kappa is left unset when the pair-interference magnitudes sum below the
/// denominator floor; downstream statistics skip such points.
struct InterferenceRecord {
  double tau_s = 0.0;
  double i123 = 0.0;
  std::array<double, 3> i_pairs{};  // pairs 110, 101, 011
  std::optional<double> kappa;
};

inline constexpr double default_kappa_floor = 1e-9;

SlitState slit_state(SlitConfig gamma);

/// Amplitudes exp(-i*Delta_j*tau)/sqrt(3) of the freely evolved all-open state.
std::array<cd, 3> evolved_three_path(const LevelGaps& gaps, double tau_s);

/// |<psi_gamma | psi_111(tau)>|^2, evaluated in closed form.
double born_probability(SlitConfig gamma, const LevelGaps& gaps, double tau_s);

/// P111 - P110 - P101 - P011 + P100 + P010 + P001 - P000.
double three_path_interference(const PathProbabilities& p);

/// Signed four-term sum for a two-open-path configuration, e.g.
/// I_110 = P110 - P100 - P010 + P000. `pair` must have exactly two open paths.
double two_path_interference(SlitConfig pair, const PathProbabilities& p);

/// Three-path interference normalized by the summed two-path magnitudes.
std::optional<double> kappa(const PathProbabilities& p, double denominator_floor = default_kappa_floor);

InterferenceRecord interference_record(const PathProbabilities& p,
                                       double denominator_floor = default_kappa_floor);

/// Ideal circuit targets on the two computation qubits: u_hat has first
/// column |psi_111> (it prepares the all-open state from |00>), and each
/// v_hat[g] has first row <psi_gamma| (so the |00> amplitude after it is the
/// slit overlap). Remaining columns/rows are completed by orthonormalizing
/// the standard basis in index order, which makes the targets deterministic.
struct TargetUnitaries {
  Eigen::Matrix4cd u_hat;
  std::array<Eigen::Matrix4cd, 8> v_hat;
};

TargetUnitaries target_unitaries();

}  // namespace tripath
