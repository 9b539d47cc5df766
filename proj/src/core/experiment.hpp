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

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "core/error_models.hpp"
#include "core/grape.hpp"
#include "core/paths_born.hpp"
#include "core/quantum_engine.hpp"

namespace tripath {

/// analytic: closed-form Born probabilities, no engine.
/// ideal_pulse: synthesized pulses applied without error, relaxation on.
/// noisy: ideal_pulse plus the configured error models.
enum class SimulationMode { analytic, ideal_pulse, noisy };

/// two_experiment: the reference signal comes from a separate experiment
/// (one per repetition per tau by default); slow fluctuations differ between
/// the reference and the measured run.
/// inline_reference: both signals come from one experiment, cancelling the
/// slow fluctuation and leaving only fast per-acquisition noise.
enum class MeasurementProtocol { two_experiment, inline_reference };

/// Which operators implement the circuit gates: exact target unitaries or
/// GRAPE pulse propagators.
enum class GateSource { exact, grape };

struct TauGrid {
  double start_us = 0.0;
  double stop_us = 1900.0;
  double step_us = 100.0;

  std::vector<double> values_us() const;
};

struct NoiseConfig {
  FluctuationSpec fluctuation;
  DistortionSpec distortion;
  GateErrorSpec gate_error{1e-3};
  RfEnsemble rf_ensemble = RfEnsemble::single();
};

struct GrapeSettings {
  // Zero means "derive from the system": the duration scales with the
  // inverse of the strongest computation J-coupling (entangling power is
  // J-limited), and the slice length targets ~50 us.
  double pulse_duration_s = 0.0;
  int n_slices = 0;
  OptimizerConfig optimizer;
  int restarts = 3;  // extra seeded attempts when a synthesis stalls
  double refocus_duration_s = 20e-6;
  std::string pulse_dir;  // load pulses from here instead of synthesizing

  double effective_duration_s(const SpinSystem& computation) const;
  int effective_n_slices(const SpinSystem& computation) const;
};

struct ExperimentConfig {
  SpinSystem system;
  SimulationMode mode = SimulationMode::analytic;
  CouplingModel coupling = CouplingModel::weak;
  TauGrid tau;
  int repetitions = 10;
  MeasurementProtocol protocol = MeasurementProtocol::two_experiment;
  bool include_probe = false;  // 3-spin engine with probe readout vs 2-spin
  bool refocusing = true;
  std::uint64_t seed = 0;
  bool per_gamma_reference = false;  // one reference per (tau, rep, gamma)
  double kappa_floor = default_kappa_floor;
  std::optional<GateSource> gate_source;  // override; default grape for engine modes
  std::optional<bool> relaxation;         // override; default on for engine modes
  NoiseConfig noise;
  GrapeSettings grape;

  GateSource effective_gate_source() const;
  bool effective_relaxation() const;
  SpinSystem computation_system() const;  // first two spins
  SpinSystem engine_system() const;       // first two or three spins
  /// Fills rf sigma defaults (probe species 0.007, computation 0.002).
  FluctuationSpec effective_fluctuation() const;
  void validate() const;  // throws std::invalid_argument on bad configs
};

struct RunRecord {
  SlitConfig gamma;
  double tau_us = 0.0;
  int repetition = 0;
  double m_i = 1.0;
  double m_f = 0.0;
  double probability = 0.0;
  bool valid = true;
};

struct KappaSample {
  double tau_us = 0.0;
  int repetition = 0;
  std::optional<double> kappa;
  bool complete = true;  // all eight configurations present and valid
};

struct KappaByTau {
  double tau_us = 0.0;
  int n_defined = 0;
  double mean = 0.0;
  double sample_std = 0.0;   // over repetitions, n-1 normalization
  double std_of_mean = 0.0;  // sample_std / sqrt(n)
};

struct KappaSummary {
  bool has_result = false;
  double mean = 0.0;
  double standard_error = 0.0;
  int n_tau_used = 0;
  bool exact = false;  // deterministic data: unweighted mean, zero error
  std::vector<double> undefined_tau_us;
};

struct SweepDataset {
  std::vector<RunRecord> records;
  std::vector<KappaSample> samples;
  std::vector<KappaByTau> by_tau;
  KappaSummary summary;
  int invalid_records = 0;

  // report metadata
  std::string mode_name;
  std::string protocol_name;
  std::uint64_t seed = 0;
  int repetitions = 0;
  std::map<std::string, double> gate_fidelities;  // per synthesized target
};

/// Inverse-variance weighted mean over (value, sigma) samples with sigma > 0:
/// w_i = 1/sigma_i^2, mean = sum(w k)/sum(w), standard error = sqrt(1/sum w).
/// Returns nothing when no usable sample exists.
struct WeightedMean {
  double mean = 0.0;
  double standard_error = 0.0;
  int n = 0;
};
std::optional<WeightedMean> weighted_sample_mean(const std::vector<std::pair<double, double>>& samples);

/// Executes the circuit for one (gamma, tau, repetition) shot. Prepares the
/// gates once at construction: exact targets, freshly synthesized pulses, or
/// pulses loaded from grape.pulse_dir (missing files raise an error, they are
/// not regenerated silently).
class ExperimentEngine {
 public:
  explicit ExperimentEngine(const ExperimentConfig& cfg);
  ~ExperimentEngine();
  ExperimentEngine(ExperimentEngine&&) noexcept;
  ExperimentEngine& operator=(ExperimentEngine&&) noexcept;

  RunRecord run_shot(SlitConfig gamma, double tau_us, int repetition) const;
  const std::map<std::string, double>& gate_fidelities() const;
  const ExperimentConfig& config() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// One shot through the configured pipeline (repetition 0).
RunRecord run_single(SlitConfig gamma, double tau_us, const ExperimentConfig& cfg);

/// Full sweep: 8 gammas x tau grid x repetitions, plus derived kappa
/// statistics. Deterministic for fixed seeds; shots draw noise from seeds
/// derived from their (tau, repetition, gamma) coordinates, so results do
/// not depend on execution order.
SweepDataset run_sweep(const ExperimentConfig& cfg);

/// Rebuilds kappa samples, per-tau aggregates and the weighted-mean summary
/// from raw records (the `analyze` entry point; run_sweep uses it too).
SweepDataset analyze_records(std::vector<RunRecord> records,
                             double kappa_floor = default_kappa_floor);

/// Synthesizes the nine circuit targets on the configured engine system.
/// Keys: "U" and "V_000" ... "V_111".
std::map<std::string, SynthesisResult> synthesize_circuit_pulses(const ExperimentConfig& cfg);

std::string to_string(SimulationMode mode);
std::string to_string(MeasurementProtocol protocol);

}  // namespace tripath
