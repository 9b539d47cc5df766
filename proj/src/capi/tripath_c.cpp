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
#include "tripath/tripath.h"

#include <charconv>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "core/config_io.hpp"
#include "core/errors.hpp"
#include "core/experiment.hpp"
#include "core/report.hpp"

struct tp_experiment {
  tripath::ExperimentConfig cfg;
};

struct tp_dataset {
  tripath::SweepDataset data;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename F>
tp_status guarded(F&& f) {
  try {
    f();
    g_last_error.clear();
    return TP_OK;
  } catch (const nlohmann::json::exception& e) {
    g_last_error = e.what();
    return TP_ERR_PARSE;
  } catch (const tripath::IoError& e) {
    g_last_error = e.what();
    return TP_ERR_IO;
  } catch (const std::invalid_argument& e) {
    g_last_error = e.what();
    return TP_ERR_INVALID_ARGUMENT;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return TP_ERR_RUNTIME;
  }
}

tp_status require(bool cond, const char* msg) {
  if (cond) return TP_OK;
  g_last_error = msg;
  return TP_ERR_INVALID_ARGUMENT;
}

double parse_number(const std::string& value, const char* key) {
  double v = 0.0;
  const auto res = std::from_chars(value.data(), value.data() + value.size(), v);
  if (res.ec != std::errc() || res.ptr != value.data() + value.size())
    throw std::invalid_argument(std::string("tp_experiment_set: non-numeric value for ") + key);
  return v;
}

bool parse_flag(const std::string& value, const char* key) {
  if (value == "1" || value == "true" || value == "on") return true;
  if (value == "0" || value == "false" || value == "off") return false;
  throw std::invalid_argument(std::string("tp_experiment_set: expected 0/1 for ") + key);
}

}  // namespace

extern "C" {

const char* tp_version(void) { return "0.1.0"; }

const char* tp_status_name(tp_status status) {
  switch (status) {
    case TP_OK: return "ok";
    case TP_ERR_INVALID_ARGUMENT: return "invalid argument";
    case TP_ERR_PARSE: return "parse error";
    case TP_ERR_IO: return "io error";
    case TP_ERR_RUNTIME: return "runtime error";
  }
  return "unknown";
}

const char* tp_last_error(void) { return g_last_error.c_str(); }

void tp_string_free(char* s) { delete[] s; }

tp_status tp_experiment_default(tp_experiment** out) {
  if (const tp_status st = require(out != nullptr, "null out pointer"); st != TP_OK) return st;
  return guarded([&] { *out = new tp_experiment{tripath::default_config()}; });
}

tp_status tp_experiment_parse(const char* config_json, tp_experiment** out) {
  if (const tp_status st = require(out && config_json, "null argument"); st != TP_OK) return st;
  return guarded([&] { *out = new tp_experiment{tripath::config_from_json(config_json)}; });
}

tp_status tp_experiment_load(const char* path, tp_experiment** out) {
  if (const tp_status st = require(out && path, "null argument"); st != TP_OK) return st;
  return guarded([&] { *out = new tp_experiment{tripath::load_config(path)}; });
}

void tp_experiment_free(tp_experiment* cfg) { delete cfg; }

tp_status tp_experiment_set(tp_experiment* cfg, const char* key, const char* value) {
  if (const tp_status st = require(cfg && key && value, "null argument"); st != TP_OK) return st;
  return guarded([&] {
    const std::string k = key;
    const std::string v = value;
    tripath::ExperimentConfig& c = cfg->cfg;
    if (k == "mode")
      c.mode = tripath::parse_mode(v);
    else if (k == "protocol")
      c.protocol = tripath::parse_protocol(v);
    else if (k == "coupling")
      c.coupling = tripath::parse_coupling(v);
    else if (k == "tau_start_us")
      c.tau.start_us = parse_number(v, key);
    else if (k == "tau_stop_us")
      c.tau.stop_us = parse_number(v, key);
    else if (k == "tau_step_us")
      c.tau.step_us = parse_number(v, key);
    else if (k == "reps" || k == "repetitions")
      c.repetitions = static_cast<int>(parse_number(v, key));
    else if (k == "seed")
      c.seed = static_cast<std::uint64_t>(parse_number(v, key));
    else if (k == "include_probe")
      c.include_probe = parse_flag(v, key);
    else if (k == "refocusing")
      c.refocusing = parse_flag(v, key);
    else if (k == "gate_source")
      c.gate_source = tripath::parse_gate_source(v);
    else if (k == "relaxation")
      c.relaxation = parse_flag(v, key);
    else if (k == "pulse_dir")
      c.grape.pulse_dir = v;
    else
      throw std::invalid_argument("tp_experiment_set: unknown key '" + k + "'");
  });
}

tp_status tp_experiment_to_json(const tp_experiment* cfg, char** json_out) {
  if (const tp_status st = require(cfg && json_out, "null argument"); st != TP_OK) return st;
  return guarded([&] { *json_out = dup_string(tripath::config_to_json(cfg->cfg)); });
}

tp_status tp_experiment_lint(const tp_experiment* cfg, char** report_json_out) {
  if (const tp_status st = require(cfg && report_json_out, "null argument"); st != TP_OK) return st;
  return guarded([&] {
    nlohmann::json report;
    const tripath::ValidationReport sys = tripath::validate_system(cfg->cfg.system);
    report["violations"] = sys.violations;
    report["warnings"] = sys.warnings;
    try {
      cfg->cfg.validate();
    } catch (const std::exception& e) {
      report["violations"].push_back(e.what());
    }
    report["ok"] = report["violations"].empty();
    *report_json_out = dup_string(report.dump(2) + "\n");
  });
}

tp_status tp_experiment_run(const tp_experiment* cfg, tp_dataset** out) {
  if (const tp_status st = require(cfg && out, "null argument"); st != TP_OK) return st;
  return guarded([&] { *out = new tp_dataset{tripath::run_sweep(cfg->cfg)}; });
}

tp_status tp_dataset_from_runs_csv(const char* path, double kappa_floor, tp_dataset** out) {
  if (const tp_status st = require(path && out, "null argument"); st != TP_OK) return st;
  return guarded([&] {
    const double floor = kappa_floor > 0 ? kappa_floor : tripath::default_kappa_floor;
    tripath::SweepDataset data =
        tripath::analyze_records(tripath::load_runs_csv(path), floor);
    data.mode_name = "reanalyzed";
    data.protocol_name = "unknown";
    *out = new tp_dataset{std::move(data)};
  });
}

tp_status tp_dataset_write(const tp_dataset* data, const char* out_dir) {
  if (const tp_status st = require(data && out_dir, "null argument"); st != TP_OK) return st;
  return guarded([&] { tripath::emit_report(data->data, out_dir); });
}

tp_status tp_dataset_summary(const tp_dataset* data, char** json_out) {
  if (const tp_status st = require(data && json_out, "null argument"); st != TP_OK) return st;
  return guarded([&] { *json_out = dup_string(tripath::summary_json(data->data)); });
}

long tp_dataset_record_count(const tp_dataset* data) {
  return data ? static_cast<long>(data->data.records.size()) : -1;
}

void tp_dataset_free(tp_dataset* data) { delete data; }

tp_status tp_synthesize(const tp_experiment* cfg, const char* out_dir, char** summary_json_out) {
  if (const tp_status st = require(cfg && out_dir, "null argument"); st != TP_OK) return st;
  return guarded([&] {
    const auto results = tripath::synthesize_circuit_pulses(cfg->cfg);
    const std::filesystem::path dir(out_dir);
    std::filesystem::create_directories(dir);
    nlohmann::json summary;
    for (const auto& [name, result] : results) {
      const std::string file = name == "U" ? "u.json" : "v_" + name.substr(2) + ".json";
      tripath::save_pulse(result.pulse, (dir / file).string());
      summary[name] = {{"file", file},
                       {"fidelity", result.fidelity},
                       {"iterations", result.iterations},
                       {"converged", result.converged}};
    }
    const std::string text = summary.dump(2) + "\n";
    std::ofstream out(dir / "synthesis.json");
    out << text;
    if (summary_json_out) *summary_json_out = dup_string(text);
  });
}

}  // extern "C"
