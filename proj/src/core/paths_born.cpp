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
#include "core/paths_born.hpp"

#include <cmath>

namespace tripath {

namespace {
constexpr double inv_sqrt3 = 0.5773502691896257645091488;
}

SlitConfig::SlitConfig(int index) : index_(index) {
  if (index < 0 || index > 7) throw std::invalid_argument("SlitConfig: index out of range");
}

SlitConfig SlitConfig::from_string(const std::string& bits) {
  if (bits.size() != 3 || bits.find_first_not_of("01") != std::string::npos)
    throw std::invalid_argument("SlitConfig: expected three bits, e.g. \"110\"");
  return SlitConfig(4 * (bits[0] - '0') + 2 * (bits[1] - '0') + (bits[2] - '0'));
}

int SlitConfig::open_count() const {
  return ((index_ >> 2) & 1) + ((index_ >> 1) & 1) + (index_ & 1);
}

std::string SlitConfig::to_string() const {
  std::string s(3, '0');
  for (int k = 1; k <= 3; ++k)
    if (open(k)) s[k - 1] = '1';
  return s;
}

std::array<SlitConfig, 8> SlitConfig::all() {
  std::array<SlitConfig, 8> out;
  for (int i = 0; i < 8; ++i) out[i] = SlitConfig(i);
  return out;
}

double SlitState::norm() const {
  double n = beta * beta;
  for (const cd& a : amps) n += std::norm(a);
  return std::sqrt(n);
}

Eigen::Vector4cd SlitState::as_vector() const {
  Eigen::Vector4cd v;
  v << cd(beta, 0), amps[0], amps[1], amps[2];
  return v;
}

SlitState slit_state(SlitConfig gamma) {
  SlitState s;
  for (int k = 1; k <= 3; ++k) s.amps[k - 1] = gamma.open(k) ? cd(inv_sqrt3, 0) : cd(0, 0);
  s.beta = std::sqrt(1.0 - gamma.open_count() / 3.0);
  return s;
}

std::array<cd, 3> evolved_three_path(const LevelGaps& gaps, double tau_s) {
  std::array<cd, 3> amps;
  for (int j = 0; j < 3; ++j)
    amps[j] = std::polar(inv_sqrt3, -gaps.delta[j] * tau_s);
  return amps;
}

double born_probability(SlitConfig gamma, const LevelGaps& gaps, double tau_s) {
  const auto evolved = evolved_three_path(gaps, tau_s);
  // <psi_gamma| has real amplitudes gamma_k/sqrt(3); the |0> component of the
  // evolved state is zero, so beta never enters.
  cd overlap(0, 0);
  for (int k = 1; k <= 3; ++k)
    if (gamma.open(k)) overlap += inv_sqrt3 * evolved[k - 1];
  return std::norm(overlap);
}

double three_path_interference(const PathProbabilities& p) {
  const auto P = [&](const char* g) { return p[SlitConfig::from_string(g)]; };
  return P("111") - P("110") - P("101") - P("011") + P("100") + P("010") + P("001") - P("000");
}

double two_path_interference(SlitConfig pair, const PathProbabilities& p) {
  if (pair.open_count() != 2)
    throw std::invalid_argument("two_path_interference: configuration must have two open paths");
  // Decompose the pair into its two single-path configurations.
  int singles[2];
  int found = 0;
  for (int k = 1; k <= 3; ++k)
    if (pair.open(k)) singles[found++] = 1 << (3 - k);
  return p.p[pair.index()] - p.p[singles[0]] - p.p[singles[1]] + p.p[0];
}

std::optional<double> kappa(const PathProbabilities& p, double denominator_floor) {
  return interference_record(p, denominator_floor).kappa;
}

InterferenceRecord interference_record(const PathProbabilities& p, double denominator_floor) {
  InterferenceRecord rec;
  rec.tau_s = p.tau_s;
  rec.i123 = three_path_interference(p);
  const std::array<const char*, 3> pairs = {"110", "101", "011"};
  double denom = 0.0;
  for (int i = 0; i < 3; ++i) {
    rec.i_pairs[i] = two_path_interference(SlitConfig::from_string(pairs[i]), p);
    denom += std::abs(rec.i_pairs[i]);
  }
  if (denom > denominator_floor) rec.kappa = rec.i123 / denom;
  return rec;
}

namespace {

// Completes a unitary whose first column is `first`, filling the remaining
// columns by Gram-Schmidt over the standard basis in index order.
Eigen::Matrix4cd complete_from_first_column(const Eigen::Vector4cd& first) {
  Eigen::Matrix4cd u = Eigen::Matrix4cd::Zero();
  u.col(0) = first.normalized();
  int filled = 1;
  for (int e = 0; e < 4 && filled < 4; ++e) {
    Eigen::Vector4cd v = Eigen::Vector4cd::Zero();
    v(e) = 1.0;
    for (int c = 0; c < filled; ++c) v -= u.col(c) * (u.col(c).adjoint() * v)(0);
    const double n = v.norm();
    if (n > 1e-9) u.col(filled++) = v / n;
  }
  if (filled != 4) throw std::logic_error("unitary completion failed");
  return u;
}

}  // namespace

TargetUnitaries target_unitaries() {
  TargetUnitaries t;
  t.u_hat = complete_from_first_column(slit_state(SlitConfig::from_string("111")).as_vector());
  for (const SlitConfig g : SlitConfig::all()) {
    // First row <psi_gamma|: build the unitary with first column |psi_gamma>
    // and take the adjoint.
    t.v_hat[g.index()] = complete_from_first_column(slit_state(g).as_vector()).adjoint();
  }
  return t;
}

}  // namespace tripath
