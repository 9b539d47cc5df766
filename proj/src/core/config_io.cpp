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
#include "core/config_io.hpp"

#include <fstream>

#include <json.hpp>

#include "core/errors.hpp"

namespace tripath {

using nlohmann::json;

SpinSystem default_twospin_system() {
  std::vector<Spin> spins = {
      {"C1", 500.0, 6.0, 1.2, ""},
      {"C2", -500.0, 7.0, 1.5, ""},
  };
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(2, 2);
  j(0, 1) = j(1, 0) = 50.0;
  return SpinSystem(std::move(spins), std::move(j));
}

SpinSystem default_threespin_system() {
  std::vector<Spin> spins = {
      {"C1", 1750.0, 6.0, 1.2, ""},
      {"C2", -1750.0, 7.0, 1.5, ""},
      {"H", 0.0, 4.5, 0.9, ""},
  };
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(3, 3);
  j(0, 1) = j(1, 0) = 180.0;  // C1-C2
  j(0, 2) = j(2, 0) = 235.0;  // C1-H
  j(1, 2) = j(2, 1) = 50.0;   // C2-H
  return SpinSystem(std::move(spins), std::move(j));
}

ExperimentConfig default_config() {
  ExperimentConfig cfg;
  cfg.system = default_threespin_system();
  return cfg;
}

SimulationMode parse_mode(const std::string& name) {
  if (name == "analytic") return SimulationMode::analytic;
  if (name == "ideal" || name == "ideal-pulse") return SimulationMode::ideal_pulse;
  if (name == "noisy") return SimulationMode::noisy;
  throw std::invalid_argument("unknown mode '" + name + "' (analytic|ideal|noisy)");
}

MeasurementProtocol parse_protocol(const std::string& name) {
  if (name == "two-exp" || name == "two-experiment") return MeasurementProtocol::two_experiment;
  if (name == "inline" || name == "inline-reference") return MeasurementProtocol::inline_reference;
  throw std::invalid_argument("unknown protocol '" + name + "' (two-exp|inline)");
}

CouplingModel parse_coupling(const std::string& name) {
  if (name == "weak") return CouplingModel::weak;
  if (name == "strong") return CouplingModel::strong;
  throw std::invalid_argument("unknown coupling model '" + name + "' (weak|strong)");
}

GateSource parse_gate_source(const std::string& name) {
  if (name == "exact") return GateSource::exact;
  if (name == "grape") return GateSource::grape;
  throw std::invalid_argument("unknown gate source '" + name + "' (exact|grape)");
}

namespace {

SpinSystem system_from(const json& js) {
  std::vector<Spin> spins;
  for (const auto& s : js.at("spins")) {
    Spin spin;
    spin.label = s.at("label").get<std::string>();
    spin.offset_hz = s.at("offset_hz").get<double>();
    spin.t1_s = s.at("t1_s").get<double>();
    spin.t2_s = s.at("t2_s").get<double>();
    if (s.contains("species")) spin.species = s.at("species").get<std::string>();
    spins.push_back(std::move(spin));
  }
  const auto n = static_cast<Eigen::Index>(spins.size());
  Eigen::MatrixXd j_table = Eigen::MatrixXd::Zero(n, n);
  if (js.contains("j_hz")) {
    for (const auto& entry : js.at("j_hz")) {
      const int a = entry.at(0).get<int>();
      const int b = entry.at(1).get<int>();
      const double v = entry.at(2).get<double>();
      if (a < 0 || b < 0 || a >= n || b >= n || a == b)
        throw std::invalid_argument("spin system: bad j_hz index pair");
      j_table(a, b) = v;
      j_table(b, a) = v;
    }
  }
  return SpinSystem(std::move(spins), std::move(j_table));
}

json system_to(const SpinSystem& system) {
  json js;
  js["spins"] = json::array();
  for (const auto& s : system.spins) {
    json sp = {{"label", s.label}, {"offset_hz", s.offset_hz}, {"t1_s", s.t1_s}, {"t2_s", s.t2_s}};
    if (!s.species.empty()) sp["species"] = s.species;
    js["spins"].push_back(sp);
  }
  js["j_hz"] = json::array();
  for (int i = 0; i < system.size(); ++i)
    for (int k = i + 1; k < system.size(); ++k)
      if (system.j_hz(i, k) != 0.0) js["j_hz"].push_back({i, k, system.j_hz(i, k)});
  return js;
}

void read_experiment(const json& je, ExperimentConfig& cfg) {
  if (je.contains("mode")) cfg.mode = parse_mode(je["mode"].get<std::string>());
  if (je.contains("coupling")) cfg.coupling = parse_coupling(je["coupling"].get<std::string>());
  if (je.contains("tau_start_us")) cfg.tau.start_us = je["tau_start_us"].get<double>();
  if (je.contains("tau_stop_us")) cfg.tau.stop_us = je["tau_stop_us"].get<double>();
  if (je.contains("tau_step_us")) cfg.tau.step_us = je["tau_step_us"].get<double>();
  if (je.contains("repetitions")) cfg.repetitions = je["repetitions"].get<int>();
  if (je.contains("protocol")) cfg.protocol = parse_protocol(je["protocol"].get<std::string>());
  if (je.contains("include_probe")) cfg.include_probe = je["include_probe"].get<bool>();
  if (je.contains("refocusing")) cfg.refocusing = je["refocusing"].get<bool>();
  if (je.contains("seed")) cfg.seed = je["seed"].get<std::uint64_t>();
  if (je.contains("per_gamma_reference"))
    cfg.per_gamma_reference = je["per_gamma_reference"].get<bool>();
  if (je.contains("kappa_floor")) cfg.kappa_floor = je["kappa_floor"].get<double>();
  if (je.contains("gate_source"))
    cfg.gate_source = parse_gate_source(je["gate_source"].get<std::string>());
  if (je.contains("relaxation")) cfg.relaxation = je["relaxation"].get<bool>();
}

void read_noise(const json& jn, NoiseConfig& noise) {
  if (jn.contains("rf_sigma"))
    for (const auto& [species, sigma] : jn["rf_sigma"].items())
      noise.fluctuation.rf_sigma_by_species[species] = sigma.get<double>();
  if (jn.contains("pps_signal_sigma"))
    noise.fluctuation.pps_signal_sigma = jn["pps_signal_sigma"].get<double>();
  if (jn.contains("pps_signal_worst"))
    noise.fluctuation.pps_signal_worst = jn["pps_signal_worst"].get<double>();
  if (jn.contains("acquisition_sigma"))
    noise.fluctuation.acquisition_sigma = jn["acquisition_sigma"].get<double>();
  if (jn.contains("gate_error")) noise.gate_error.error_per_gate = jn["gate_error"].get<double>();
  if (jn.contains("distortion_kernel"))
    noise.distortion.kernel = jn["distortion_kernel"].get<std::vector<double>>();
  if (jn.contains("residual_gain_error"))
    noise.distortion.residual_gain_error = jn["residual_gain_error"].get<double>();
  if (jn.contains("rf_ensemble")) {
    noise.rf_ensemble.scale_factors =
        jn["rf_ensemble"].at("scale_factors").get<std::vector<double>>();
    noise.rf_ensemble.weights = jn["rf_ensemble"].at("weights").get<std::vector<double>>();
  }
}

void read_grape(const json& jg, GrapeSettings& grape) {
  if (jg.contains("pulse_duration_s")) grape.pulse_duration_s = jg["pulse_duration_s"].get<double>();
  if (jg.contains("n_slices")) grape.n_slices = jg["n_slices"].get<int>();
  if (jg.contains("fidelity_target"))
    grape.optimizer.fidelity_target = jg["fidelity_target"].get<double>();
  if (jg.contains("max_iterations")) grape.optimizer.max_iterations = jg["max_iterations"].get<int>();
  if (jg.contains("max_nutation_hz"))
    grape.optimizer.max_nutation_rad_s = two_pi * jg["max_nutation_hz"].get<double>();
  if (jg.contains("seed")) grape.optimizer.seed = jg["seed"].get<std::uint64_t>();
  if (jg.contains("restarts")) grape.restarts = jg["restarts"].get<int>();
  if (jg.contains("refocus_duration_s"))
    grape.refocus_duration_s = jg["refocus_duration_s"].get<double>();
  if (jg.contains("pulse_dir")) grape.pulse_dir = jg["pulse_dir"].get<std::string>();
}

}  // namespace

SpinSystem spin_system_from_json(const std::string& text) {
  return system_from(json::parse(text));
}

std::string spin_system_to_json(const SpinSystem& system) { return system_to(system).dump(2); }

ExperimentConfig config_from_json(const std::string& text) {
  const json j = json::parse(text);
  ExperimentConfig cfg = default_config();
  if (j.contains("system")) cfg.system = system_from(j["system"]);
  if (j.contains("experiment")) read_experiment(j["experiment"], cfg);
  if (j.contains("noise")) read_noise(j["noise"], cfg.noise);
  if (j.contains("grape")) read_grape(j["grape"], cfg.grape);
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return config_from_json(text);
}

std::string config_to_json(const ExperimentConfig& cfg) {
  json j;
  j["system"] = system_to(cfg.system);
  json je;
  je["mode"] = to_string(cfg.mode);
  je["coupling"] = cfg.coupling == CouplingModel::weak ? "weak" : "strong";
  je["tau_start_us"] = cfg.tau.start_us;
  je["tau_stop_us"] = cfg.tau.stop_us;
  je["tau_step_us"] = cfg.tau.step_us;
  je["repetitions"] = cfg.repetitions;
  je["protocol"] = to_string(cfg.protocol);
  je["include_probe"] = cfg.include_probe;
  je["refocusing"] = cfg.refocusing;
  je["seed"] = cfg.seed;
  je["per_gamma_reference"] = cfg.per_gamma_reference;
  je["kappa_floor"] = cfg.kappa_floor;
  if (cfg.gate_source)
    je["gate_source"] = *cfg.gate_source == GateSource::exact ? "exact" : "grape";
  if (cfg.relaxation) je["relaxation"] = *cfg.relaxation;
  j["experiment"] = je;

  json jn;
  if (!cfg.noise.fluctuation.rf_sigma_by_species.empty()) {
    json sig;
    for (const auto& [species, sigma] : cfg.noise.fluctuation.rf_sigma_by_species)
      sig[species] = sigma;
    jn["rf_sigma"] = sig;
  }
  jn["pps_signal_sigma"] = cfg.noise.fluctuation.pps_signal_sigma;
  jn["pps_signal_worst"] = cfg.noise.fluctuation.pps_signal_worst;
  jn["acquisition_sigma"] = cfg.noise.fluctuation.acquisition_sigma;
  jn["gate_error"] = cfg.noise.gate_error.error_per_gate;
  jn["distortion_kernel"] = cfg.noise.distortion.kernel;
  jn["residual_gain_error"] = cfg.noise.distortion.residual_gain_error;
  j["noise"] = jn;

  json jg;
  jg["pulse_duration_s"] = cfg.grape.pulse_duration_s;
  jg["n_slices"] = cfg.grape.n_slices;
  jg["fidelity_target"] = cfg.grape.optimizer.fidelity_target;
  jg["max_iterations"] = cfg.grape.optimizer.max_iterations;
  jg["max_nutation_hz"] = cfg.grape.optimizer.max_nutation_rad_s / two_pi;
  jg["seed"] = cfg.grape.optimizer.seed;
  jg["restarts"] = cfg.grape.restarts;
  jg["refocus_duration_s"] = cfg.grape.refocus_duration_s;
  if (!cfg.grape.pulse_dir.empty()) jg["pulse_dir"] = cfg.grape.pulse_dir;
  j["grape"] = jg;
  return j.dump(2);
}

}  // namespace tripath
