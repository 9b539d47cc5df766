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
#include "core/grape.hpp"

#include <algorithm>
#include <cmath>

#include "core/rng.hpp"

namespace tripath {

namespace {

// Control operators, one (x, y) Hermitian pair per pulse channel.
struct ControlOps {
  std::vector<Eigen::MatrixXcd> bx, by;
};

ControlOps control_operators(const ControlPulse& pulse, const SpinSystem& system) {
  const int n = system.size();
  const int dim = system.dim();
  ControlOps ops;
  for (const auto& ch : pulse.channels) {
    Eigen::MatrixXcd bx = Eigen::MatrixXcd::Zero(dim, dim);
    Eigen::MatrixXcd by = Eigen::MatrixXcd::Zero(dim, dim);
    for (int s = 0; s < n; ++s) {
      if (system.spins[s].effective_species() != ch.species) continue;
      bx += 0.5 * op_on_qubit(pauli_x(), s, n);
      by += 0.5 * op_on_qubit(pauli_y(), s, n);
    }
    ops.bx.push_back(std::move(bx));
    ops.by.push_back(std::move(by));
  }
  return ops;
}

Eigen::MatrixXcd slice_hamiltonian(const Eigen::MatrixXcd& drift, const ControlOps& ops,
                                   const ControlPulse& pulse, int k) {
  Eigen::MatrixXcd h = drift;
  for (size_t c = 0; c < pulse.channels.size(); ++c)
    h += pulse.channels[c].x[k] * ops.bx[c] + pulse.channels[c].y[k] * ops.by[c];
  return h;
}

struct SliceEig {
  Eigen::MatrixXcd vectors;
  Eigen::VectorXd values;
  Eigen::MatrixXcd u;  // exp(-i h dt)
};

SliceEig slice_propagator(const Eigen::MatrixXcd& h, double dt) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  SliceEig out;
  out.vectors = es.eigenvectors();
  out.values = es.eigenvalues();
  Eigen::VectorXcd phases(out.values.size());
  for (Eigen::Index i = 0; i < out.values.size(); ++i)
    phases(i) = std::polar(1.0, -out.values(i) * dt);
  out.u = out.vectors * phases.asDiagonal() * out.vectors.adjoint();
  return out;
}

// (exp(d) - 1)/d, stable near d = 0.
cd phi1(cd d) {
  if (std::abs(d) < 1e-8) return 1.0 + d / 2.0 + d * d / 6.0;
  return (std::exp(d) - 1.0) / d;
}

// Divided-difference table Gamma_ab = (e^{mu_a} - e^{mu_b}) / (mu_a - mu_b)
// with mu = -i*lambda*dt; the diagonal limit is e^{mu_a}.
Eigen::MatrixXcd exp_divided_differences(const Eigen::VectorXd& values, double dt) {
  const Eigen::Index n = values.size();
  Eigen::MatrixXcd gamma(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    const cd mu_a = cd(0, -values(a) * dt);
    for (Eigen::Index b = 0; b < n; ++b) {
      const cd mu_b = cd(0, -values(b) * dt);
      gamma(a, b) = std::exp(mu_b) * phi1(mu_a - mu_b);
    }
  }
  return gamma;
}

Eigen::MatrixXcd lift_goal(const Eigen::MatrixXcd& u_goal, const SpinSystem& system) {
  const int dim = system.dim();
  if (u_goal.rows() == dim) return u_goal;
  int extra = 0;
  Eigen::Index d = u_goal.rows();
  while (d < dim) {
    d *= 2;
    ++extra;
  }
  if (d != dim)
    throw std::invalid_argument("synthesize: goal dimension incompatible with spin system");
  return pad_with_identity(u_goal, extra);
}

struct FidelityWorkspace {
  Eigen::MatrixXcd drift;
  ControlOps ops;

  double fidelity(const ControlPulse& pulse, const Eigen::MatrixXcd& goal) const {
    const double dt = pulse.dt();
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(drift.rows(), drift.cols());
    for (int k = 0; k < pulse.n_slices; ++k)
      u = slice_propagator(slice_hamiltonian(drift, ops, pulse, k), dt).u * u;
    return hs_fidelity(u, goal);
  }
};

std::vector<PulseChannel> gradient_shape(const ControlPulse& pulse) {
  std::vector<PulseChannel> g;
  for (const auto& ch : pulse.channels)
    g.push_back({ch.species, std::vector<double>(pulse.n_slices, 0.0),
                 std::vector<double>(pulse.n_slices, 0.0)});
  return g;
}

// Exact or first-order gradient sharing one forward/backward sweep.
std::vector<PulseChannel> analytic_gradient(const ControlPulse& pulse,
                                            const Eigen::MatrixXcd& goal,
                                            const Eigen::MatrixXcd& drift, const ControlOps& ops,
                                            bool exact) {
  const int n_slices = pulse.n_slices;
  const double dt = pulse.dt();
  const Eigen::Index dim = drift.rows();
  const double n2 = static_cast<double>(dim) * static_cast<double>(dim);

  std::vector<SliceEig> slices(n_slices);
  std::vector<Eigen::MatrixXcd> forward(n_slices + 1);
  forward[0] = Eigen::MatrixXcd::Identity(dim, dim);
  for (int k = 0; k < n_slices; ++k) {
    slices[k] = slice_propagator(slice_hamiltonian(drift, ops, pulse, k), dt);
    forward[k + 1] = slices[k].u * forward[k];
  }
  const cd trace_total = (goal.adjoint() * forward[n_slices]).trace();

  std::vector<PulseChannel> grad = gradient_shape(pulse);
  // back[k] = goal^dag U_K ... U_{k+1}, filled by sweeping from the end.
  Eigen::MatrixXcd back = goal.adjoint();
  for (int k = n_slices - 1; k >= 0; --k) {
    if (exact) {
      const Eigen::MatrixXcd& v = slices[k].vectors;
      const Eigen::MatrixXcd gamma = exp_divided_differences(slices[k].values, dt);
      // Tr[back dU forward] = Tr[(V^dag dH V .* Gamma) * (-i dt) * P] with
      // P = V^dag forward back V.
      const Eigen::MatrixXcd p = v.adjoint() * forward[k] * back * v;
      for (size_t c = 0; c < ops.bx.size(); ++c) {
        const Eigen::MatrixXcd bxv = v.adjoint() * ops.bx[c] * v;
        const Eigen::MatrixXcd byv = v.adjoint() * ops.by[c] * v;
        const cd dtr_x = cd(0, -dt) * (gamma.cwiseProduct(bxv).cwiseProduct(p.transpose())).sum();
        const cd dtr_y = cd(0, -dt) * (gamma.cwiseProduct(byv).cwiseProduct(p.transpose())).sum();
        grad[c].x[k] = 2.0 * (std::conj(trace_total) * dtr_x).real() / n2;
        grad[c].y[k] = 2.0 * (std::conj(trace_total) * dtr_y).real() / n2;
      }
    } else {
      // dU ~ -i dt B U: Tr[back (-i dt B) U_k forward_{k-1}]
      const Eigen::MatrixXcd m = forward[k + 1] * back;
      for (size_t c = 0; c < ops.bx.size(); ++c) {
        const cd dtr_x = cd(0, -dt) * (ops.bx[c].cwiseProduct(m.transpose())).sum();
        const cd dtr_y = cd(0, -dt) * (ops.by[c].cwiseProduct(m.transpose())).sum();
        grad[c].x[k] = 2.0 * (std::conj(trace_total) * dtr_x).real() / n2;
        grad[c].y[k] = 2.0 * (std::conj(trace_total) * dtr_y).real() / n2;
      }
    }
    back = back * slices[k].u;
  }
  return grad;
}

std::vector<PulseChannel> fd_gradient(const ControlPulse& pulse, const Eigen::MatrixXcd& goal,
                                      const SpinSystem& system, CouplingModel model, double h) {
  std::vector<PulseChannel> grad = gradient_shape(pulse);
  ControlPulse work = pulse;
  auto probe = [&](std::vector<double>& amp, int k) {
    const double saved = amp[k];
    amp[k] = saved + h;
    const double fp = hs_fidelity(propagator_from_pulse(work, system, model), goal);
    amp[k] = saved - h;
    const double fm = hs_fidelity(propagator_from_pulse(work, system, model), goal);
    amp[k] = saved;
    return (fp - fm) / (2.0 * h);
  };
  for (size_t c = 0; c < work.channels.size(); ++c) {
    for (int k = 0; k < pulse.n_slices; ++k) {
      grad[c].x[k] = probe(work.channels[c].x, k);
      grad[c].y[k] = probe(work.channels[c].y, k);
    }
  }
  return grad;
}

}  // namespace

Eigen::MatrixXcd propagator_from_pulse(const ControlPulse& pulse, const SpinSystem& system,
                                       CouplingModel model) {
  pulse.validate();
  const Eigen::MatrixXcd drift = build_hamiltonian(system, model);
  const ControlOps ops = control_operators(pulse, system);
  const double dt = pulse.dt();
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(system.dim(), system.dim());
  for (int k = 0; k < pulse.n_slices; ++k)
    u = slice_propagator(slice_hamiltonian(drift, ops, pulse, k), dt).u * u;
  return u;
}

double hs_fidelity(const Eigen::MatrixXcd& u_app, const Eigen::MatrixXcd& u_goal) {
  if (u_app.rows() != u_goal.rows() || u_app.cols() != u_goal.cols())
    throw std::invalid_argument("hs_fidelity: dimension mismatch");
  const double n = static_cast<double>(u_app.rows());
  return std::norm((u_app.adjoint() * u_goal).trace()) / (n * n);
}

std::vector<PulseChannel> fidelity_gradient(const ControlPulse& pulse,
                                            const Eigen::MatrixXcd& u_goal,
                                            const SpinSystem& system, CouplingModel model,
                                            GradientMode mode, double fd_step_rad_s) {
  pulse.validate();
  const Eigen::MatrixXcd goal = lift_goal(u_goal, system);
  if (mode == GradientMode::finite_difference)
    return fd_gradient(pulse, goal, system, model, fd_step_rad_s);
  const Eigen::MatrixXcd drift = build_hamiltonian(system, model);
  const ControlOps ops = control_operators(pulse, system);
  return analytic_gradient(pulse, goal, drift, ops, mode == GradientMode::exact);
}

SynthesisResult synthesize(const Eigen::MatrixXcd& u_goal, const ControlPulse& template_pulse,
                           const OptimizerConfig& cfg, const SpinSystem& system,
                           CouplingModel model) {
  ControlPulse pulse = template_pulse;
  if (pulse.n_slices < 1 || !(pulse.duration_s > 0))
    throw std::invalid_argument("synthesize: template must define duration and slices");
  auto rng = make_engine(cfg.seed);
  std::uniform_real_distribution<double> init(-cfg.init_amplitude_rad_s, cfg.init_amplitude_rad_s);
  for (auto& ch : pulse.channels) {
    if (ch.x.empty()) {
      ch.x.resize(pulse.n_slices);
      for (auto& a : ch.x) a = init(rng);
    }
    if (ch.y.empty()) {
      ch.y.resize(pulse.n_slices);
      for (auto& a : ch.y) a = init(rng);
    }
  }
  pulse.validate(cfg.max_nutation_rad_s);

  const Eigen::MatrixXcd goal = lift_goal(u_goal, system);
  const FidelityWorkspace ws{build_hamiltonian(system, model), control_operators(pulse, system)};

  SynthesisResult result;
  double fid = ws.fidelity(pulse, goal);
  result.fidelity_trace.push_back(fid);
  double step = 0.0;  // set from the first gradient

  int it = 0;
  for (; it < cfg.max_iterations && fid < cfg.fidelity_target; ++it) {
    const std::vector<PulseChannel> grad =
        fidelity_gradient(pulse, u_goal, system, model, cfg.gradient_mode, cfg.fd_step_rad_s);
    double gmax = 0.0;
    for (const auto& ch : grad)
      for (int k = 0; k < pulse.n_slices; ++k)
        gmax = std::max({gmax, std::abs(ch.x[k]), std::abs(ch.y[k])});
    if (gmax == 0.0) break;  // stationary point
    if (step == 0.0) step = cfg.initial_step_rad_s / gmax;

    bool accepted = false;
    for (int bt = 0; bt < cfg.max_backtracks; ++bt) {
      ControlPulse trial = pulse;
      for (size_t c = 0; c < trial.channels.size(); ++c) {
        for (int k = 0; k < pulse.n_slices; ++k) {
          trial.channels[c].x[k] = std::clamp(trial.channels[c].x[k] + step * grad[c].x[k],
                                              -cfg.max_nutation_rad_s, cfg.max_nutation_rad_s);
          trial.channels[c].y[k] = std::clamp(trial.channels[c].y[k] + step * grad[c].y[k],
                                              -cfg.max_nutation_rad_s, cfg.max_nutation_rad_s);
        }
      }
      const double trial_fid = ws.fidelity(trial, goal);
      if (trial_fid > fid) {
        pulse = std::move(trial);
        fid = trial_fid;
        result.fidelity_trace.push_back(fid);
        step *= 1.6;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;  // line search exhausted
  }

  result.pulse = std::move(pulse);
  result.iterations = it;
  result.fidelity = hs_fidelity(propagator_from_pulse(result.pulse, system, model), goal);
  result.converged = result.fidelity >= cfg.fidelity_target;
  return result;
}

}  // namespace tripath
