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
#include "core/error_models.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "core/rng.hpp"

namespace tripath {

RfEnsemble RfEnsemble::single() { return RfEnsemble{{1.0}, {1.0}}; }

RfEnsemble RfEnsemble::gauss_hermite(double sigma, int n_points, double mean) {
  if (n_points < 1) throw std::invalid_argument("gauss_hermite: need >= 1 point");
  if (sigma == 0.0 || n_points == 1) return RfEnsemble{{mean}, {1.0}};
  // Golub-Welsch on the Hermite Jacobi matrix: nodes are eigenvalues, weights
  // are sqrt(pi) * (first eigenvector component)^2; normalization cancels.
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n_points, n_points);
  for (int i = 1; i < n_points; ++i) {
    const double b = std::sqrt(i / 2.0);
    jacobi(i, i - 1) = b;
    jacobi(i - 1, i) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jacobi);
  RfEnsemble e;
  double wsum = 0.0;
  for (int i = 0; i < n_points; ++i) {
    const double x = es.eigenvalues()(i);
    const double w = es.eigenvectors()(0, i) * es.eigenvectors()(0, i);
    e.scale_factors.push_back(mean + std::sqrt(2.0) * sigma * x);
    e.weights.push_back(w);
    wsum += w;
  }
  for (double& w : e.weights) w /= wsum;
  return e;
}

void RfEnsemble::validate() const {
  if (scale_factors.empty() || scale_factors.size() != weights.size())
    throw std::invalid_argument("RfEnsemble: scale/weight arrays invalid");
  double sum = 0.0;
  for (size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] < 0) throw std::invalid_argument("RfEnsemble: negative weight");
    if (scale_factors[i] <= 0) throw std::invalid_argument("RfEnsemble: nonpositive scale factor");
    sum += weights[i];
  }
  if (std::abs(sum - 1.0) > 1e-12) throw std::invalid_argument("RfEnsemble: weights must sum to 1");
}

ControlPulse apply_rf_scale(const ControlPulse& pulse, double scale) {
  if (!(scale > 0)) throw std::invalid_argument("apply_rf_scale: scale must be positive");
  ControlPulse out = pulse;
  for (auto& c : out.channels) {
    for (double& a : c.x) a *= scale;
    for (double& a : c.y) a *= scale;
  }
  return out;
}

ControlPulse apply_rf_scale(const ControlPulse& pulse,
                            const std::map<std::string, double>& scale_by_species) {
  ControlPulse out = pulse;
  for (auto& c : out.channels) {
    const auto it = scale_by_species.find(c.species);
    if (it == scale_by_species.end()) continue;
    if (!(it->second > 0)) throw std::invalid_argument("apply_rf_scale: scale must be positive");
    for (double& a : c.x) a *= it->second;
    for (double& a : c.y) a *= it->second;
  }
  return out;
}

FluctuationDraw sample_fluctuations(const FluctuationSpec& spec, std::uint64_t seed) {
  auto rng = make_engine(seed);
  std::normal_distribution<double> unit(0.0, 1.0);
  FluctuationDraw draw;
  // std::map iterates in species-sorted order, which fixes the draw order.
  for (const auto& [species, sigma] : spec.rf_sigma_by_species)
    draw.rf_scale_by_species[species] = sigma == 0.0 ? 1.0 : 1.0 + sigma * unit(rng);
  double dev = spec.pps_signal_sigma == 0.0 ? 0.0 : spec.pps_signal_sigma * unit(rng);
  dev = std::clamp(dev, -spec.pps_signal_worst, spec.pps_signal_worst);
  draw.pps_factor = 1.0 + dev;
  return draw;
}

ControlPulse distort(const ControlPulse& pulse, const DistortionSpec& spec) {
  if (spec.kernel.empty()) throw std::invalid_argument("distort: empty kernel");
  const double dc = std::accumulate(spec.kernel.begin(), spec.kernel.end(), 0.0);
  if (std::abs(dc) < 1e-300) throw std::invalid_argument("distort: kernel has zero DC gain");
  std::vector<double> kernel = spec.kernel;
  for (double& k : kernel) k /= dc;

  const int n = pulse.n_slices;
  const int len = static_cast<int>(kernel.size());
  const int center = (len - 1) / 2;
  const double gain = 1.0 + spec.residual_gain_error;

  ControlPulse out = pulse;
  auto convolve = [&](const std::vector<double>& in, std::vector<double>& res) {
    std::fill(res.begin(), res.end(), 0.0);
    for (int i = 0; i < n; ++i) {
      for (int t = 0; t < len; ++t) {
        // Scatter each slice through the kernel; clamp keeps boundary mass.
        const int j = std::clamp(i + t - center, 0, n - 1);
        res[j] += kernel[t] * in[i];
      }
    }
    for (double& a : res) a *= gain;
  };
  for (size_t c = 0; c < pulse.channels.size(); ++c) {
    convolve(pulse.channels[c].x, out.channels[c].x);
    convolve(pulse.channels[c].y, out.channels[c].y);
  }
  return out;
}

DensityMatrix inject_gate_error(const DensityMatrix& rho, const GateErrorSpec& spec,
                                std::uint64_t /*seed*/) {
  const double p = spec.error_per_gate;
  if (p < 0 || p > 1) throw std::invalid_argument("inject_gate_error: strength must be in [0, 1]");
  if (p == 0) return rho;
  DensityMatrix out = rho;
  if (rho.kind == StateKind::deviation) {
    out.entries *= (1.0 - p);
  } else {
    const double tr = rho.entries.trace().real();
    out.entries = (1.0 - p) * rho.entries +
                  p * (tr / rho.dim()) * Eigen::MatrixXcd::Identity(rho.dim(), rho.dim());
  }
  return out;
}

double ensemble_average(const std::function<double(double)>& run, const RfEnsemble& ensemble) {
  ensemble.validate();
  double acc = 0.0;
  for (size_t i = 0; i < ensemble.scale_factors.size(); ++i)
    acc += ensemble.weights[i] * run(ensemble.scale_factors[i]);
  return acc;
}

}  // namespace tripath
