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

#include <string>
#include <vector>

#include "core/experiment.hpp"

namespace tripath {

/// Full-precision decimal form that parses back to the identical double.
std::string format_double(double v);

/// Writes runs.csv (all RunRecords), kappa_samples.csv, kappa_by_tau.csv
/// (the per-tau mean/std series) and summary.json into `out_dir`, creating
/// it if needed. Validates the dataset before opening any file, so failures
/// leave no partial output behind.
void emit_report(const SweepDataset& dataset, const std::string& out_dir);

std::string summary_json(const SweepDataset& dataset);

/// Reads a runs.csv produced by emit_report; re-analyzing the records
/// reproduces the original statistics exactly.
std::vector<RunRecord> load_runs_csv(const std::string& path);

}  // namespace tripath
