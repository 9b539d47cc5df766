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

#include "core/experiment.hpp"

namespace tripath {

/// Two carbons sharing one RF channel: offsets +-500 Hz, J = 50 Hz. The
/// stock register for pulse-synthesis work.
SpinSystem default_twospin_system();

/// Three-spin register shaped like the acetylene test molecule (two carbons
/// plus a proton probe). The numeric values are synthetic placeholders with
/// realistic magnitudes, not measured constants; override them from a config
/// file for quantitative work.
SpinSystem default_threespin_system();

ExperimentConfig default_config();

SpinSystem spin_system_from_json(const std::string& text);
std::string spin_system_to_json(const SpinSystem& system);

/// Parses a full experiment config; absent fields keep their defaults.
ExperimentConfig config_from_json(const std::string& text);
ExperimentConfig load_config(const std::string& path);
std::string config_to_json(const ExperimentConfig& cfg);

SimulationMode parse_mode(const std::string& name);
MeasurementProtocol parse_protocol(const std::string& name);
CouplingModel parse_coupling(const std::string& name);
GateSource parse_gate_source(const std::string& name);

}  // namespace tripath
