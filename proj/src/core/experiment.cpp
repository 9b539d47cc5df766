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
#include "core/experiment.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <mutex>
#include <set>

#include "core/rng.hpp"

namespace tripath {

namespace {

constexpr double pi = two_pi / 2.0;

// Shot-coordinate tags for seed derivation. Circuit shots use the gamma
// index 0..7 directly.
constexpr std::uint64_t tag_reference = 8;
constexpr std::uint64_t tag_reference_per_gamma = 16;  // +gamma
constexpr std::uint64_t tag_acquisition = 32;          // +gamma

std::uint64_t tau_coord(double tau_us) { return std::bit_cast<std::uint64_t>(tau_us); }

double max_computation_j(const SpinSystem& computation) {
  double jmax = 0.0;
  for (int i = 0; i < computation.size(); ++i)
    for (int k = i + 1; k < computation.size(); ++k)
      jmax = std::max(jmax, std::abs(computation.j(i, k)));
  return jmax;
}

}  // namespace

std::vector<double> TauGrid::values_us() const {
  if (!(step_us > 0)) throw std::invalid_argument("TauGrid: step must be positive");
  std::vector<double> taus;
  for (int k = 0;; ++k) {
    const double t = start_us + k * step_us;
    if (t > stop_us + 1e-9 * step_us) break;
    taus.push_back(t);
  }
  if (taus.empty()) throw std::invalid_argument("TauGrid: empty grid");
  return taus;
}

double GrapeSettings::effective_duration_s(const SpinSystem& computation) const {
  if (pulse_duration_s > 0) return pulse_duration_s;
  const double jmax = max_computation_j(computation);
  if (jmax <= 0)
    throw std::invalid_argument("GrapeSettings: cannot derive pulse duration without J-coupling");
  // The entangling rate is capped by (pi/2)*J; 1.25/J covers the deepest
  // circuit target class with slack (the all-open preparation alone needs
  // about 0.75/J).
  return 1.25 / jmax;
}

int GrapeSettings::effective_n_slices(const SpinSystem& computation) const {
  if (n_slices > 0) return n_slices;
  const double dur = effective_duration_s(computation);
  return std::max(32, static_cast<int>(std::ceil(dur / 50e-6)));
}

GateSource ExperimentConfig::effective_gate_source() const {
  if (gate_source) return *gate_source;
  return GateSource::grape;
}

bool ExperimentConfig::effective_relaxation() const {
  if (relaxation) return *relaxation;
  return mode != SimulationMode::analytic;
}

SpinSystem ExperimentConfig::computation_system() const { return system.subsystem({0, 1}); }

SpinSystem ExperimentConfig::engine_system() const {
  if (include_probe) return system.subsystem({0, 1, 2});
  return system.subsystem({0, 1});
}

FluctuationSpec ExperimentConfig::effective_fluctuation() const {
  FluctuationSpec spec = noise.fluctuation;
  if (spec.rf_sigma_by_species.empty()) {
    const SpinSystem engine = engine_system();
    for (int i = 0; i < engine.size(); ++i) {
      const bool probe = i >= 2;
      spec.rf_sigma_by_species[engine.spins[i].effective_species()] = probe ? 0.007 : 0.002;
    }
  }
  return spec;
}

void ExperimentConfig::validate() const {
  const ValidationReport report = validate_system(system);
  if (!report.ok()) {
    std::string msg = "invalid spin system:";
    for (const auto& v : report.violations) msg += " [" + v + "]";
    throw std::invalid_argument(msg);
  }
  if (system.size() < 2) throw std::invalid_argument("config: at least two spins required");
  if (include_probe && system.size() < 3)
    throw std::invalid_argument("config: include_probe requires a third (probe) spin");
  tau.values_us();  // throws on a bad grid
  if (repetitions < 1) throw std::invalid_argument("config: repetitions >= 1 required");
  if (!(kappa_floor > 0)) throw std::invalid_argument("config: kappa_floor must be positive");
  const FluctuationSpec f = effective_fluctuation();
  for (const auto& [species, sigma] : f.rf_sigma_by_species)
    if (sigma < 0) throw std::invalid_argument("config: rf sigma for " + species + " negative");
  if (f.pps_signal_sigma < 0 || f.acquisition_sigma < 0)
    throw std::invalid_argument("config: fluctuation sigma negative");
  if (f.pps_signal_worst < f.pps_signal_sigma)
    throw std::invalid_argument("config: pps_signal_worst must be >= pps_signal_sigma");
  if (noise.gate_error.error_per_gate < 0 || noise.gate_error.error_per_gate > 1)
    throw std::invalid_argument("config: gate error must be in [0, 1]");
  noise.rf_ensemble.validate();
  if (noise.distortion.kernel.empty())
    throw std::invalid_argument("config: distortion kernel must be nonempty");
}

std::string to_string(SimulationMode mode) {
  switch (mode) {
    case SimulationMode::analytic: return "analytic";
    case SimulationMode::ideal_pulse: return "ideal";
    case SimulationMode::noisy: return "noisy";
  }
  return "?";
}

std::string to_string(MeasurementProtocol protocol) {
  return protocol == MeasurementProtocol::two_experiment ? "two-exp" : "inline";
}

std::optional<WeightedMean> weighted_sample_mean(
    const std::vector<std::pair<double, double>>& samples) {
  double wsum = 0.0, acc = 0.0;
  int n = 0;
  for (const auto& [value, sigma] : samples) {
    if (!(sigma > 0)) continue;
    const double w = 1.0 / (sigma * sigma);
    wsum += w;
    acc += w * value;
    ++n;
  }
  if (n == 0) return std::nullopt;
  return WeightedMean{acc / wsum, std::sqrt(1.0 / wsum), n};
}

// ---------------------------------------------------------------------------
// Engine
// ---------------------------------------------------------------------------

struct ExperimentEngine::Impl {
  ExperimentConfig cfg;
  SpinSystem engine_sys;
  SpinSystem computation;
  LevelGaps gaps;
  FluctuationSpec fluctuation;
  GateSource source = GateSource::exact;
  bool relax = false;
  bool noisy = false;

  Eigen::MatrixXcd drift;
  // exact gates, lifted to the engine dimension
  Eigen::MatrixXcd u_exact;
  std::array<Eigen::MatrixXcd, 8> v_exact;
  Eigen::MatrixXcd refocus_exact;
  // pulse gates
  ControlPulse u_pulse;
  std::array<ControlPulse, 8> v_pulses;
  ControlPulse refocus_pulse;
  Eigen::MatrixXcd u_pulse_prop;
  std::array<Eigen::MatrixXcd, 8> v_pulse_props;
  Eigen::MatrixXcd refocus_pulse_prop;

  std::map<std::string, double> fidelities;

  mutable std::mutex cache_mutex;
  mutable std::map<double, Eigen::MatrixXcd> freeprop_cache;  // keyed by time in s

  explicit Impl(const ExperimentConfig& config) : cfg(config) {
    cfg.validate();
    engine_sys = cfg.engine_system();
    computation = cfg.computation_system();
    gaps = level_gaps(computation);
    fluctuation = cfg.effective_fluctuation();
    source = cfg.effective_gate_source();
    relax = cfg.effective_relaxation();
    noisy = cfg.mode == SimulationMode::noisy;
    if (cfg.mode == SimulationMode::analytic) return;

    drift = build_hamiltonian(engine_sys, cfg.coupling);
    const TargetUnitaries targets = target_unitaries();
    const int extra = engine_sys.size() - 2;
    if (source == GateSource::exact) {
      u_exact = pad_with_identity(targets.u_hat, extra);
      for (int g = 0; g < 8; ++g) v_exact[g] = pad_with_identity(targets.v_hat[g], extra);
    } else {
      prepare_pulses(targets);
    }
    if (cfg.include_probe && cfg.refocusing) {
      refocus_exact = op_on_qubit(pauli_x(), engine_sys.size() - 1, engine_sys.size());
      if (source == GateSource::grape) {
        refocus_pulse = hard_pulse(pi, 0.0, cfg.grape.refocus_duration_s,
                                   engine_sys.spins.back().effective_species());
        if (noisy && !cfg.noise.distortion.is_identity())
          refocus_pulse = distort(refocus_pulse, cfg.noise.distortion);
        refocus_pulse_prop = propagator_from_pulse(refocus_pulse, engine_sys, cfg.coupling);
      }
    }
  }

  void prepare_pulses(const TargetUnitaries& targets) {
    if (!cfg.grape.pulse_dir.empty()) {
      load_pulses();
    } else {
      synthesize_pulses(targets);
    }
    if (noisy && !cfg.noise.distortion.is_identity()) {
      u_pulse = distort(u_pulse, cfg.noise.distortion);
      for (auto& p : v_pulses) p = distort(p, cfg.noise.distortion);
    }
    u_pulse_prop = propagator_from_pulse(u_pulse, engine_sys, cfg.coupling);
    fidelities["U"] = hs_fidelity(u_pulse_prop, pad_with_identity(targets.u_hat, engine_sys.size() - 2));
    for (int g = 0; g < 8; ++g) {
      v_pulse_props[g] = propagator_from_pulse(v_pulses[g], engine_sys, cfg.coupling);
      fidelities["V_" + SlitConfig(g).to_string()] =
          hs_fidelity(v_pulse_props[g], pad_with_identity(targets.v_hat[g], engine_sys.size() - 2));
    }
  }

  void load_pulses() {
    const std::string dir = cfg.grape.pulse_dir;
    try {
      u_pulse = load_pulse(dir + "/u.json");
      for (int g = 0; g < 8; ++g)
        v_pulses[g] = load_pulse(dir + "/v_" + SlitConfig(g).to_string() + ".json");
    } catch (const std::exception& e) {
      throw std::runtime_error(std::string("pulse library incomplete for this system; run "
                                           "synthesis first: ") +
                               e.what());
    }
  }

  void synthesize_pulses(const TargetUnitaries&) {
    std::map<std::string, SynthesisResult> results = synthesize_circuit_pulses(cfg);
    u_pulse = std::move(results.at("U").pulse);
    for (int g = 0; g < 8; ++g)
      v_pulses[g] = std::move(results.at("V_" + SlitConfig(g).to_string()).pulse);
  }

  Eigen::MatrixXcd freeprop(double t_s) const {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = freeprop_cache.find(t_s);
    if (it != freeprop_cache.end()) return it->second;
    Eigen::MatrixXcd u = free_propagator(drift, t_s);
    freeprop_cache.emplace(t_s, u);
    return u;
  }

  DensityMatrix initial_state() const {
    if (cfg.include_probe) return pps_deviation(engine_sys.size());
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
    m(0, 0) = 1.0;
    return DensityMatrix{std::move(m), StateKind::full};
  }

  void relax_state(DensityMatrix& state, double t_s) const {
    if (relax && t_s > 0) state = apply_relaxation(state, t_s, engine_sys);
  }

  void inject_error(DensityMatrix& state) const {
    if (noisy && cfg.noise.gate_error.error_per_gate > 0)
      state = inject_gate_error(state, cfg.noise.gate_error);
  }

  bool unit_scales(const std::map<std::string, double>& scales) const {
    for (const auto& [species, s] : scales)
      if (s != 1.0) return false;
    return true;
  }

  Eigen::MatrixXcd pulse_propagator(const ControlPulse& pulse, const Eigen::MatrixXcd& cached,
                                    const std::map<std::string, double>& scales,
                                    double extra_scale) const {
    if (extra_scale == 1.0 && unit_scales(scales)) return cached;
    ControlPulse scaled = apply_rf_scale(pulse, scales);
    if (extra_scale != 1.0) scaled = apply_rf_scale(scaled, extra_scale);
    return propagator_from_pulse(scaled, engine_sys, cfg.coupling);
  }

  void apply_gate(DensityMatrix& state, const Eigen::MatrixXcd& exact_op,
                  const ControlPulse& pulse, const Eigen::MatrixXcd& cached_prop,
                  const std::map<std::string, double>& scales, double ensemble_scale) const {
    if (source == GateSource::exact) {
      state = apply_unitary(state, exact_op);
    } else {
      state = apply_unitary(state, pulse_propagator(pulse, cached_prop, scales, ensemble_scale));
      relax_state(state, pulse.duration_s);
    }
    inject_error(state);
  }

  // Full circuit for one RF-scale realization; returns the readout signal.
  double circuit_signal(SlitConfig gamma, double tau_s,
                        const std::map<std::string, double>& scales, double ensemble_scale) const {
    DensityMatrix state = initial_state();
    apply_gate(state, u_exact, u_pulse, u_pulse_prop, scales, ensemble_scale);

    if (cfg.include_probe && cfg.refocusing) {
      const Eigen::MatrixXcd half = freeprop(tau_s / 2.0);
      state = apply_unitary(state, half);
      relax_state(state, tau_s / 2.0);
      if (source == GateSource::exact) {
        state = apply_unitary(state, refocus_exact);
      } else {
        state = apply_unitary(
            state, pulse_propagator(refocus_pulse, refocus_pulse_prop, scales, ensemble_scale));
        relax_state(state, refocus_pulse.duration_s);
      }
      inject_error(state);
      state = apply_unitary(state, half);
      relax_state(state, tau_s / 2.0);
    } else {
      state = apply_unitary(state, freeprop(tau_s));
      relax_state(state, tau_s);
    }

    apply_gate(state, v_exact[gamma.index()], v_pulses[gamma.index()],
               v_pulse_props[gamma.index()], scales, ensemble_scale);

    if (cfg.include_probe) return measure_magnetization(state);
    return state.entries(0, 0).real();
  }

  double reference_factor(double tau_us, int repetition, SlitConfig gamma) const {
    if (!noisy) return 1.0;
    const std::uint64_t tag =
        cfg.per_gamma_reference ? tag_reference_per_gamma + gamma.index() : tag_reference;
    const std::uint64_t seed =
        derive_seed(cfg.seed, {tau_coord(tau_us), std::uint64_t(repetition), tag});
    return sample_fluctuations(fluctuation, seed).pps_factor;
  }

  RunRecord run_shot(SlitConfig gamma, double tau_us, int repetition) const {
    RunRecord rec;
    rec.gamma = gamma;
    rec.tau_us = tau_us;
    rec.repetition = repetition;

    if (cfg.mode == SimulationMode::analytic) {
      rec.m_i = 1.0;
      rec.m_f = born_probability(gamma, gaps, tau_us * 1e-6);
      rec.probability = rec.m_f;
      return rec;
    }

    std::map<std::string, double> scales;
    double pps_factor = 1.0;
    if (noisy) {
      const std::uint64_t shot_seed = derive_seed(
          cfg.seed, {tau_coord(tau_us), std::uint64_t(repetition), std::uint64_t(gamma.index())});
      const FluctuationDraw draw = sample_fluctuations(fluctuation, shot_seed);
      scales = draw.rf_scale_by_species;
      pps_factor = draw.pps_factor;
    }

    const double tau_s = tau_us * 1e-6;
    double signal = 0.0;
    if (noisy && cfg.noise.rf_ensemble.scale_factors.size() > 1 &&
        source == GateSource::grape) {
      signal = ensemble_average(
          [&](double s) { return circuit_signal(gamma, tau_s, scales, s); },
          cfg.noise.rf_ensemble);
    } else {
      signal = circuit_signal(gamma, tau_s, scales, 1.0);
    }

    if (cfg.protocol == MeasurementProtocol::two_experiment) {
      rec.m_i = reference_factor(tau_us, repetition, gamma);
      rec.m_f = pps_factor * signal;
    } else {
      double g_i = 1.0, g_f = 1.0;
      if (noisy && fluctuation.acquisition_sigma > 0) {
        auto rng = make_engine(derive_seed(
            cfg.seed, {tau_coord(tau_us), std::uint64_t(repetition),
                       tag_acquisition + std::uint64_t(gamma.index())}));
        std::normal_distribution<double> unit(0.0, 1.0);
        g_i = 1.0 + fluctuation.acquisition_sigma * unit(rng);
        g_f = 1.0 + fluctuation.acquisition_sigma * unit(rng);
      }
      // One experiment provides both readings: the slow preparation factor
      // multiplies both signals and cancels in the ratio.
      rec.m_i = pps_factor * g_i;
      rec.m_f = pps_factor * g_f * signal;
    }

    rec.valid = rec.m_i > 0;
    rec.probability = rec.valid ? rec.m_f / rec.m_i : 0.0;
    return rec;
  }
};

ExperimentEngine::ExperimentEngine(const ExperimentConfig& cfg) : impl_(std::make_unique<Impl>(cfg)) {}
ExperimentEngine::~ExperimentEngine() = default;
ExperimentEngine::ExperimentEngine(ExperimentEngine&&) noexcept = default;
ExperimentEngine& ExperimentEngine::operator=(ExperimentEngine&&) noexcept = default;

RunRecord ExperimentEngine::run_shot(SlitConfig gamma, double tau_us, int repetition) const {
  return impl_->run_shot(gamma, tau_us, repetition);
}

const std::map<std::string, double>& ExperimentEngine::gate_fidelities() const {
  return impl_->fidelities;
}

const ExperimentConfig& ExperimentEngine::config() const { return impl_->cfg; }

RunRecord run_single(SlitConfig gamma, double tau_us, const ExperimentConfig& cfg) {
  return ExperimentEngine(cfg).run_shot(gamma, tau_us, 0);
}

SweepDataset run_sweep(const ExperimentConfig& cfg) {
  const ExperimentEngine engine(cfg);
  const std::vector<double> taus = cfg.tau.values_us();

  std::vector<RunRecord> records;
  records.reserve(taus.size() * cfg.repetitions * 8);
  for (const double tau_us : taus)
    for (int rep = 0; rep < cfg.repetitions; ++rep)
      for (const SlitConfig gamma : SlitConfig::all())
        records.push_back(engine.run_shot(gamma, tau_us, rep));

  SweepDataset dataset = analyze_records(std::move(records), cfg.kappa_floor);
  dataset.mode_name = to_string(cfg.mode);
  dataset.protocol_name = to_string(cfg.protocol);
  dataset.seed = cfg.seed;
  dataset.repetitions = cfg.repetitions;
  dataset.gate_fidelities = engine.gate_fidelities();
  return dataset;
}

namespace {

ControlPulse synthesis_template(const ExperimentConfig& cfg, const SpinSystem& engine_sys,
                                const SpinSystem& computation) {
  ControlPulse t;
  t.duration_s = cfg.grape.effective_duration_s(computation);
  t.n_slices = cfg.grape.effective_n_slices(computation);
  std::set<std::string> seen;
  for (const auto& spin : engine_sys.spins) {
    const std::string species = spin.effective_species();
    if (seen.insert(species).second) t.channels.push_back({species, {}, {}});
  }
  return t;
}

SynthesisResult synthesize_with_restarts(const Eigen::MatrixXcd& goal, const ControlPulse& tmpl,
                                         const ExperimentConfig& cfg,
                                         const SpinSystem& engine_sys, std::uint64_t target_tag) {
  SynthesisResult best;
  bool first = true;
  for (int attempt = 0; attempt <= cfg.grape.restarts; ++attempt) {
    OptimizerConfig opt = cfg.grape.optimizer;
    opt.seed = derive_seed(cfg.grape.optimizer.seed, {target_tag, std::uint64_t(attempt)});
    SynthesisResult r = synthesize(goal, tmpl, opt, engine_sys, cfg.coupling);
    if (first || r.fidelity > best.fidelity) best = std::move(r);
    first = false;
    if (best.converged) break;
  }
  return best;
}

}  // namespace

std::map<std::string, SynthesisResult> synthesize_circuit_pulses(const ExperimentConfig& cfg) {
  cfg.validate();
  const SpinSystem engine_sys = cfg.engine_system();
  const SpinSystem computation = cfg.computation_system();
  const ControlPulse tmpl = synthesis_template(cfg, engine_sys, computation);
  const TargetUnitaries targets = target_unitaries();

  std::map<std::string, SynthesisResult> out;
  out["U"] = synthesize_with_restarts(targets.u_hat, tmpl, cfg, engine_sys, 100);
  for (int g = 0; g < 8; ++g)
    out["V_" + SlitConfig(g).to_string()] =
        synthesize_with_restarts(targets.v_hat[g], tmpl, cfg, engine_sys, std::uint64_t(g));
  return out;
}

SweepDataset analyze_records(std::vector<RunRecord> records, double kappa_floor) {
  SweepDataset dataset;
  dataset.records = std::move(records);

  struct Group {
    std::array<std::optional<double>, 8> p;
    bool any_invalid = false;
  };
  std::map<std::pair<double, int>, Group> groups;
  for (const RunRecord& rec : dataset.records) {
    if (!rec.valid) ++dataset.invalid_records;
    Group& g = groups[{rec.tau_us, rec.repetition}];
    if (rec.valid)
      g.p[rec.gamma.index()] = rec.probability;
    else
      g.any_invalid = true;
  }

  std::map<double, std::vector<double>> defined_by_tau;
  std::set<double> all_taus;
  for (const auto& [key, group] : groups) {
    const auto& [tau_us, rep] = key;
    all_taus.insert(tau_us);
    KappaSample sample;
    sample.tau_us = tau_us;
    sample.repetition = rep;
    const bool complete =
        !group.any_invalid &&
        std::all_of(group.p.begin(), group.p.end(), [](const auto& v) { return v.has_value(); });
    sample.complete = complete;
    if (complete) {
      PathProbabilities probs;
      probs.tau_s = tau_us * 1e-6;
      for (int g = 0; g < 8; ++g) probs.p[g] = *group.p[g];
      sample.kappa = kappa(probs, kappa_floor);
      if (sample.kappa) defined_by_tau[tau_us].push_back(*sample.kappa);
    }
    dataset.samples.push_back(std::move(sample));
  }

  for (const double tau_us : all_taus) {
    KappaByTau row;
    row.tau_us = tau_us;
    const auto it = defined_by_tau.find(tau_us);
    if (it != defined_by_tau.end() && !it->second.empty()) {
      const std::vector<double>& ks = it->second;
      row.n_defined = static_cast<int>(ks.size());
      double mean = 0.0;
      for (double k : ks) mean += k;
      mean /= row.n_defined;
      row.mean = mean;
      if (row.n_defined > 1) {
        double ss = 0.0;
        for (double k : ks) ss += (k - mean) * (k - mean);
        row.sample_std = std::sqrt(ss / (row.n_defined - 1));
      }
      row.std_of_mean = row.sample_std / std::sqrt(static_cast<double>(row.n_defined));
    } else {
      dataset.summary.undefined_tau_us.push_back(tau_us);
    }
    dataset.by_tau.push_back(row);
  }

  // Weighted sample mean across tau points. Per-tau stds of exactly-repeated
  // data collapse to rounding noise; such points are exact and carry all the
  // weight, so they are averaged unweighted instead.
  std::vector<const KappaByTau*> usable;
  for (const KappaByTau& row : dataset.by_tau)
    if (row.n_defined >= 1) usable.push_back(&row);

  if (!usable.empty()) {
    auto effectively_zero = [](const KappaByTau& row) {
      return row.std_of_mean <= 1e-12 * std::max(1.0, std::abs(row.mean));
    };
    const bool any_exact = std::any_of(usable.begin(), usable.end(),
                                       [&](const KappaByTau* r) { return effectively_zero(*r); });
    if (any_exact) {
      double mean = 0.0;
      int n = 0;
      for (const KappaByTau* row : usable) {
        if (!effectively_zero(*row)) continue;
        mean += row->mean;
        ++n;
      }
      dataset.summary.has_result = true;
      dataset.summary.exact = true;
      dataset.summary.mean = mean / n;
      dataset.summary.standard_error = 0.0;
      dataset.summary.n_tau_used = n;
    } else {
      std::vector<std::pair<double, double>> samples;
      for (const KappaByTau* row : usable) samples.emplace_back(row->mean, row->std_of_mean);
      if (const auto wm = weighted_sample_mean(samples)) {
        dataset.summary.has_result = true;
        dataset.summary.mean = wm->mean;
        dataset.summary.standard_error = wm->standard_error;
        dataset.summary.n_tau_used = wm->n;
      }
    }
  }
  return dataset;
}

}  // namespace tripath
