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
#include "core/control_pulse.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "core/errors.hpp"

namespace tripath {

const PulseChannel* ControlPulse::channel(const std::string& species) const {
  for (const auto& c : channels)
    if (c.species == species) return &c;
  return nullptr;
}

void ControlPulse::validate(double max_nutation_rad_s) const {
  if (n_slices < 1) throw std::invalid_argument("ControlPulse: n_slices >= 1 required");
  if (!(duration_s > 0) || !(dt() > 0))
    throw std::invalid_argument("ControlPulse: positive duration required");
  for (const auto& c : channels) {
    if (static_cast<int>(c.x.size()) != n_slices || static_cast<int>(c.y.size()) != n_slices)
      throw std::invalid_argument("ControlPulse: channel '" + c.species +
                                  "' amplitude arrays do not match n_slices");
    if (max_nutation_rad_s > 0) {
      for (int k = 0; k < n_slices; ++k)
        if (std::abs(c.x[k]) > max_nutation_rad_s || std::abs(c.y[k]) > max_nutation_rad_s)
          throw std::invalid_argument("ControlPulse: amplitude exceeds max nutation");
    }
  }
}

ControlPulse hard_pulse(double angle_rad, double phase_rad, double duration_s,
                        const std::string& species) {
  if (!(duration_s > 0)) throw std::invalid_argument("hard_pulse: positive duration required");
  const double amp = angle_rad / duration_s;
  ControlPulse p;
  p.duration_s = duration_s;
  p.n_slices = 1;
  p.channels.push_back({species, {amp * std::cos(phase_rad)}, {amp * std::sin(phase_rad)}});
  return p;
}

std::string pulse_to_json(const ControlPulse& pulse) {
  nlohmann::json j;
  j["duration_s"] = pulse.duration_s;
  j["n_slices"] = pulse.n_slices;
  j["channels"] = nlohmann::json::array();
  for (const auto& c : pulse.channels)
    j["channels"].push_back({{"species", c.species}, {"x", c.x}, {"y", c.y}});
  return j.dump(2);
}

ControlPulse pulse_from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  ControlPulse p;
  p.duration_s = j.at("duration_s").get<double>();
  p.n_slices = j.at("n_slices").get<int>();
  for (const auto& jc : j.at("channels")) {
    PulseChannel c;
    c.species = jc.at("species").get<std::string>();
    c.x = jc.at("x").get<std::vector<double>>();
    c.y = jc.at("y").get<std::vector<double>>();
    p.channels.push_back(std::move(c));
  }
  p.validate();
  return p;
}

void save_pulse(const ControlPulse& pulse, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("save_pulse: cannot open " + path);
  out << pulse_to_json(pulse) << "\n";
  if (!out) throw IoError("save_pulse: write failed for " + path);
}

ControlPulse load_pulse(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("load_pulse: cannot open " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return pulse_from_json(text);
}

}  // namespace tripath
