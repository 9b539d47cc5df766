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
#include "core/report.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "core/errors.hpp"

namespace tripath {

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

double parse_double(const std::string& s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw std::runtime_error("runs.csv: bad numeric field '" + s + "'");
  return v;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(field);
  return fields;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out << content;
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace

std::string summary_json(const SweepDataset& dataset) {
  nlohmann::json j;
  j["mode"] = dataset.mode_name;
  j["protocol"] = dataset.protocol_name;
  j["seed"] = dataset.seed;
  j["repetitions"] = dataset.repetitions;
  j["n_records"] = dataset.records.size();
  j["n_kappa_samples"] = dataset.samples.size();
  j["invalid_records"] = dataset.invalid_records;
  if (dataset.summary.has_result) {
    j["kappa_wsm"] = dataset.summary.mean;
    j["kappa_wsm_se"] = dataset.summary.standard_error;
    j["kappa_exact"] = dataset.summary.exact;
    j["n_tau_used"] = dataset.summary.n_tau_used;
  } else {
    j["kappa_wsm"] = nullptr;
  }
  j["undefined_tau_us"] = dataset.summary.undefined_tau_us;
  if (!dataset.gate_fidelities.empty()) {
    nlohmann::json f;
    for (const auto& [name, fid] : dataset.gate_fidelities) f[name] = fid;
    j["gate_fidelities"] = f;
  }
  return j.dump(2) + "\n";
}

void emit_report(const SweepDataset& dataset, const std::string& out_dir) {
  if (dataset.records.empty())
    throw std::invalid_argument("emit_report: dataset has no records");

  std::string runs = "gamma,tau_us,repetition,m_i,m_f,probability,valid\n";
  for (const RunRecord& r : dataset.records) {
    runs += r.gamma.to_string();
    runs += ',';
    runs += format_double(r.tau_us);
    runs += ',';
    runs += std::to_string(r.repetition);
    runs += ',';
    runs += format_double(r.m_i);
    runs += ',';
    runs += format_double(r.m_f);
    runs += ',';
    runs += format_double(r.probability);
    runs += ',';
    runs += r.valid ? '1' : '0';
    runs += '\n';
  }

  std::string samples = "tau_us,repetition,kappa,defined,complete\n";
  for (const KappaSample& s : dataset.samples) {
    samples += format_double(s.tau_us);
    samples += ',';
    samples += std::to_string(s.repetition);
    samples += ',';
    samples += s.kappa ? format_double(*s.kappa) : std::string("");
    samples += ',';
    samples += s.kappa ? '1' : '0';
    samples += ',';
    samples += s.complete ? '1' : '0';
    samples += '\n';
  }

  std::string by_tau = "tau_us,n_defined,kappa_mean,kappa_sample_std,kappa_std_of_mean\n";
  for (const KappaByTau& row : dataset.by_tau) {
    by_tau += format_double(row.tau_us);
    by_tau += ',';
    by_tau += std::to_string(row.n_defined);
    by_tau += ',';
    by_tau += row.n_defined ? format_double(row.mean) : std::string("");
    by_tau += ',';
    by_tau += row.n_defined ? format_double(row.sample_std) : std::string("");
    by_tau += ',';
    by_tau += row.n_defined ? format_double(row.std_of_mean) : std::string("");
    by_tau += '\n';
  }

  const std::filesystem::path dir(out_dir);
  std::filesystem::create_directories(dir);
  write_file(dir / "runs.csv", runs);
  write_file(dir / "kappa_samples.csv", samples);
  write_file(dir / "kappa_by_tau.csv", by_tau);
  write_file(dir / "summary.json", summary_json(dataset));
}

std::vector<RunRecord> load_runs_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty runs csv: " + path);
  if (line != "gamma,tau_us,repetition,m_i,m_f,probability,valid")
    throw std::runtime_error("unexpected runs csv header in " + path);

  std::vector<RunRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 7) throw std::runtime_error("runs.csv: expected 7 fields per row");
    RunRecord r;
    r.gamma = SlitConfig::from_string(fields[0]);
    r.tau_us = parse_double(fields[1]);
    r.repetition = static_cast<int>(parse_double(fields[2]));
    r.m_i = parse_double(fields[3]);
    r.m_f = parse_double(fields[4]);
    r.probability = parse_double(fields[5]);
    r.valid = fields[6] == "1";
    records.push_back(r);
  }
  return records;
}

}  // namespace tripath
