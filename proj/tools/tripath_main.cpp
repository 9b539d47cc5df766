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

// Command-line front end. Everything goes through the public C API; the
// core library is not linked directly.

#include <cstdio>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "tripath/tripath.h"

namespace {

struct ExperimentDeleter {
  void operator()(tp_experiment* p) const { tp_experiment_free(p); }
};
struct DatasetDeleter {
  void operator()(tp_dataset* p) const { tp_dataset_free(p); }
};
using ExperimentPtr = std::unique_ptr<tp_experiment, ExperimentDeleter>;
using DatasetPtr = std::unique_ptr<tp_dataset, DatasetDeleter>;

struct StringDeleter {
  void operator()(char* p) const { tp_string_free(p); }
};
using CString = std::unique_ptr<char, StringDeleter>;

[[nodiscard]] bool check(tp_status st, const char* what) {
  if (st == TP_OK) return true;
  std::fprintf(stderr, "tripath: %s failed (%s): %s\n", what, tp_status_name(st), tp_last_error());
  return false;
}

ExperimentPtr make_experiment(const std::string& config_path) {
  tp_experiment* raw = nullptr;
  const tp_status st = config_path.empty() ? tp_experiment_default(&raw)
                                           : tp_experiment_load(config_path.c_str(), &raw);
  if (!check(st, "loading configuration")) return nullptr;
  return ExperimentPtr(raw);
}

bool apply_override(tp_experiment* cfg, const char* key, const std::string& value) {
  if (value.empty()) return true;
  return check(tp_experiment_set(cfg, key, value.c_str()), "setting option");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Three-path interference experiment simulator"};
  app.require_subcommand(1);

  std::string config_path, out_dir, mode, protocol, runs_path;
  std::string tau_start, tau_stop, tau_step, reps, seed;
  double kappa_floor = 0.0;

  CLI::App* simulate = app.add_subcommand("simulate", "Run a tau sweep and write reports");
  simulate->add_option("--config", config_path, "Experiment config JSON");
  simulate->add_option("--mode", mode, "analytic|ideal|noisy");
  simulate->add_option("--protocol", protocol, "two-exp|inline");
  simulate->add_option("--tau-start", tau_start, "Sweep start in microseconds");
  simulate->add_option("--tau-stop", tau_stop, "Sweep stop in microseconds");
  simulate->add_option("--tau-step", tau_step, "Sweep step in microseconds");
  simulate->add_option("--reps", reps, "Repetitions per tau");
  simulate->add_option("--seed", seed, "Base random seed");
  simulate->add_option("--out", out_dir, "Output directory")->required();

  CLI::App* synthesize = app.add_subcommand("synthesize", "Synthesize gate pulses to files");
  synthesize->add_option("--config", config_path, "Experiment config JSON");
  synthesize->add_option("--seed", seed, "Base random seed for the optimizer");
  synthesize->add_option("--out", out_dir, "Output directory for pulse files")->required();

  CLI::App* analyze = app.add_subcommand("analyze", "Recompute kappa statistics from runs.csv");
  analyze->add_option("--runs", runs_path, "runs.csv from a previous simulate")->required();
  analyze->add_option("--kappa-floor", kappa_floor, "Denominator floor for kappa");
  analyze->add_option("--out", out_dir, "Optional directory for re-emitted reports");

  CLI::App* validate = app.add_subcommand("validate", "Lint a configuration file");
  validate->add_option("--config", config_path, "Experiment config JSON");

  CLI11_PARSE(app, argc, argv);

  if (simulate->parsed()) {
    ExperimentPtr cfg = make_experiment(config_path);
    if (!cfg) return 1;
    if (!apply_override(cfg.get(), "mode", mode) ||
        !apply_override(cfg.get(), "protocol", protocol) ||
        !apply_override(cfg.get(), "tau_start_us", tau_start) ||
        !apply_override(cfg.get(), "tau_stop_us", tau_stop) ||
        !apply_override(cfg.get(), "tau_step_us", tau_step) ||
        !apply_override(cfg.get(), "reps", reps) || !apply_override(cfg.get(), "seed", seed))
      return 1;
    tp_dataset* raw = nullptr;
    if (!check(tp_experiment_run(cfg.get(), &raw), "simulation")) return 1;
    DatasetPtr data(raw);
    if (!check(tp_dataset_write(data.get(), out_dir.c_str()), "writing reports")) return 1;
    char* summary = nullptr;
    if (!check(tp_dataset_summary(data.get(), &summary), "summarizing")) return 1;
    CString guard(summary);
    std::fputs(summary, stdout);
    return 0;
  }

  if (synthesize->parsed()) {
    ExperimentPtr cfg = make_experiment(config_path);
    if (!cfg) return 1;
    if (!seed.empty()) {
      // The optimizer seed lives in the config; surface the flag through it.
      char* json = nullptr;
      if (!check(tp_experiment_to_json(cfg.get(), &json), "reading config")) return 1;
      CString guard(json);
      std::string text(json);
      const std::string needle = "\"seed\":";
      const size_t grape_pos = text.find("\"grape\"");
      const size_t seed_pos = text.find(needle, grape_pos);
      if (grape_pos == std::string::npos || seed_pos == std::string::npos) {
        std::fprintf(stderr, "tripath: cannot apply --seed to this config\n");
        return 1;
      }
      const size_t end = text.find_first_of(",}\n", seed_pos);
      text = text.substr(0, seed_pos + needle.size()) + " " + seed + text.substr(end);
      tp_experiment* patched = nullptr;
      if (!check(tp_experiment_parse(text.c_str(), &patched), "applying --seed")) return 1;
      cfg.reset(patched);
    }
    char* summary = nullptr;
    if (!check(tp_synthesize(cfg.get(), out_dir.c_str(), &summary), "synthesis")) return 1;
    CString guard(summary);
    std::fputs(summary, stdout);
    return 0;
  }

  if (analyze->parsed()) {
    tp_dataset* raw = nullptr;
    if (!check(tp_dataset_from_runs_csv(runs_path.c_str(), kappa_floor, &raw), "reading runs"))
      return 1;
    DatasetPtr data(raw);
    if (!out_dir.empty() &&
        !check(tp_dataset_write(data.get(), out_dir.c_str()), "writing reports"))
      return 1;
    char* summary = nullptr;
    if (!check(tp_dataset_summary(data.get(), &summary), "summarizing")) return 1;
    CString guard(summary);
    std::fputs(summary, stdout);
    return 0;
  }

  if (validate->parsed()) {
    ExperimentPtr cfg = make_experiment(config_path);
    if (!cfg) return 1;
    char* report = nullptr;
    if (!check(tp_experiment_lint(cfg.get(), &report), "validation")) return 1;
    CString guard(report);
    std::fputs(report, stdout);
    return std::string(report).find("\"ok\": true") != std::string::npos ? 0 : 1;
  }

  return 1;
}
