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

/* C interface to the three-path interference simulator. All functions
 * return tp_status; on failure tp_last_error() carries a diagnostic for the
 * calling thread. Objects are opaque handles owned by the caller and
 * released with the matching *_free function. Strings returned through
 * char** out-parameters are heap-allocated; release them with
 * tp_string_free. */

#ifndef TRIPATH_TRIPATH_H
#define TRIPATH_TRIPATH_H

#ifdef __cplusplus
extern "C" {
#endif

#ifndef TRIPATH_API
#define TRIPATH_API __attribute__((visibility("default")))
#endif

typedef enum tp_status {
  TP_OK = 0,
  TP_ERR_INVALID_ARGUMENT = 1,
  TP_ERR_PARSE = 2,
  TP_ERR_IO = 3,
  TP_ERR_RUNTIME = 4
} tp_status;

/* Experiment configuration: spin system, simulation mode, tau grid, noise
 * and pulse-synthesis settings. */
typedef struct tp_experiment tp_experiment;

/* Result of a sweep or of re-analyzing a runs.csv: run records, kappa
 * samples and the weighted-mean summary. */
typedef struct tp_dataset tp_dataset;

TRIPATH_API const char* tp_version(void);
TRIPATH_API const char* tp_status_name(tp_status status);
/* Message from the most recent failing call on this thread ("" if none). */
TRIPATH_API const char* tp_last_error(void);
TRIPATH_API void tp_string_free(char* s);

/* --- configuration ----------------------------------------------------- */

/* Built-in defaults: synthetic three-spin register, analytic mode,
 * tau 0..1900 us step 100 us, 10 repetitions. */
TRIPATH_API tp_status tp_experiment_default(tp_experiment** out);
TRIPATH_API tp_status tp_experiment_parse(const char* config_json, tp_experiment** out);
TRIPATH_API tp_status tp_experiment_load(const char* path, tp_experiment** out);
TRIPATH_API void tp_experiment_free(tp_experiment* cfg);

/* String-typed field override. Keys: mode (analytic|ideal|noisy), protocol
 * (two-exp|inline), tau_start_us, tau_stop_us, tau_step_us, reps, seed,
 * coupling (weak|strong), include_probe (0|1), refocusing (0|1),
 * gate_source (exact|grape), relaxation (0|1), pulse_dir. */
TRIPATH_API tp_status tp_experiment_set(tp_experiment* cfg, const char* key, const char* value);

TRIPATH_API tp_status tp_experiment_to_json(const tp_experiment* cfg, char** json_out);

/* Lint report: {"ok": bool, "violations": [...], "warnings": [...]}.
 * Returns TP_OK even when the config has violations. */
TRIPATH_API tp_status tp_experiment_lint(const tp_experiment* cfg, char** report_json_out);

/* --- simulation and analysis ------------------------------------------- */

TRIPATH_API tp_status tp_experiment_run(const tp_experiment* cfg, tp_dataset** out);

/* Re-ingest a runs.csv written by tp_dataset_write; kappa_floor <= 0 picks
 * the default. */
TRIPATH_API tp_status tp_dataset_from_runs_csv(const char* path, double kappa_floor,
                                               tp_dataset** out);

/* Writes runs.csv, kappa_samples.csv, kappa_by_tau.csv and summary.json. */
TRIPATH_API tp_status tp_dataset_write(const tp_dataset* data, const char* out_dir);
TRIPATH_API tp_status tp_dataset_summary(const tp_dataset* data, char** json_out);
TRIPATH_API long tp_dataset_record_count(const tp_dataset* data);
TRIPATH_API void tp_dataset_free(tp_dataset* data);

/* --- pulse synthesis ---------------------------------------------------- */

/* Synthesizes the nine circuit gates on the configured system and writes
 * u.json and v_000.json..v_111.json plus a synthesis summary into out_dir.
 * A simulation config pointing its pulse_dir there reuses the files. */
TRIPATH_API tp_status tp_synthesize(const tp_experiment* cfg, const char* out_dir,
                                    char** summary_json_out);

#ifdef __cplusplus
}
#endif

#endif /* TRIPATH_TRIPATH_H */
