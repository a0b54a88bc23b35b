// Copyright 2026 The lersim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ler/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "ler/errors.hpp"
#include "ler/spectra.hpp"

namespace ler {

namespace {

Json base_document() {
  return Json::parse(R"({
    "preset": "custom",
    "model": "bloch",
    "params": {
      "gamma": 1.0, "alpha": 8.56, "lambda0_pm": 86.0, "r0_pm": 286.0,
      "n": 1, "periodic": false, "coupling_scale": 1.0
    },
    "geometry": { "phase_step_pi": 0.0 },
    "pulse": {
      "type": "exp_decay", "area_pi": 0.01, "phase_pi": 0.0, "gamma_a": 2.5, "delta": 0.0,
      "omega0_amp": 0.0, "samples_path": ""
    },
    "sweep": {
      "areas_pi": [], "coupling_scales": [],
      "detuning_min": -15.0, "detuning_max": 15.0, "detuning_points": 301,
      "peak_area_min_pi": 0.01, "peak_area_max_pi": 2.0, "peak_area_points": 0,
      "rabi_window": 0.6
    },
    "time": { "start": 0.0, "stop": 8.0, "samples": 2001 },
    "solver": {
      "rtol": 1e-10, "atol": 1e-12, "dt": 1e-3, "step_check": true, "tol": 1e-8,
      "probe_window": 0.5, "max_steps": 50000000
    },
    "ffc": { "padding": 4, "band": 5.0 }
  })");
}

Json preset_patch(const std::string& preset) {
  if (preset == "custom") return Json::object();
  if (preset == "fig2") {
    return Json::parse(R"({
      "model": "manybody",
      "params": { "n": 8, "periodic": true },
      "geometry": { "phase_step_pi": 0.25 },
      "pulse": { "type": "impulsive" },
      "sweep": { "areas_pi": [0.01, 0.2], "coupling_scales": [1.0, 50.0] },
      "time": { "start": 0.0, "stop": 4.0, "samples": 401 }
    })");
  }
  if (preset == "fig3") {
    return Json::parse(R"({
      "pulse": { "type": "exp_decay", "gamma_a": 2.5, "delta": 0.0 },
      "sweep": { "areas_pi": [0.01, 0.2, 1.0, 2.0],
                 "peak_area_min_pi": 0.01, "peak_area_max_pi": 2.0, "peak_area_points": 200 }
    })");
  }
  if (preset == "peakdev") {
    return Json::parse(R"({
      "pulse": { "type": "exp_decay", "gamma_a": 2.5, "delta": 0.0 },
      "sweep": { "peak_area_min_pi": 0.01, "peak_area_max_pi": 0.5, "peak_area_points": 50 }
    })");
  }
  if (preset == "fig4" || preset == "fig5") {
    return Json::parse(R"({
      "pulse": { "type": "exp_decay", "gamma_a": 2.5 },
      "sweep": { "areas_pi": [0.01, 0.2, 1.0, 2.0] }
    })");
  }
  throw ConfigError("unknown preset '" + preset + "'");
}

void reject_unknown(const Json& doc, const Json& schema, const std::string& path) {
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    const std::string key = path + "/" + it.key();
    if (!schema.contains(it.key())) throw ConfigError("unknown config key " + key);
    const Json& ref = schema.at(it.key());
    if (ref.is_object()) {
      if (!it.value().is_object()) throw ConfigError("config key " + key + " must be an object");
      reject_unknown(it.value(), ref, key);
    }
  }
}

const Json& node(const Json& doc, const std::string& path) {
  const Json* cur = &doc;
  std::stringstream ss(path);
  std::string part;
  while (std::getline(ss, part, '/')) {
    if (part.empty()) continue;
    if (!cur->is_object() || !cur->contains(part)) {
      throw ConfigError("missing config key /" + path);
    }
    cur = &cur->at(part);
  }
  return *cur;
}

double num(const Json& doc, const std::string& path) {
  const Json& v = node(doc, path);
  if (!v.is_number()) throw ConfigError("config key /" + path + " must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError("config key /" + path + " must be finite");
  return d;
}

std::size_t count(const Json& doc, const std::string& path) {
  const Json& v = node(doc, path);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw ConfigError("config key /" + path + " must be a non-negative integer");
  }
  return std::size_t(v.get<long long>());
}

bool flag(const Json& doc, const std::string& path) {
  const Json& v = node(doc, path);
  if (!v.is_boolean()) throw ConfigError("config key /" + path + " must be a boolean");
  return v.get<bool>();
}

std::string text(const Json& doc, const std::string& path) {
  const Json& v = node(doc, path);
  if (!v.is_string()) throw ConfigError("config key /" + path + " must be a string");
  return v.get<std::string>();
}

std::vector<double> numbers(const Json& doc, const std::string& path) {
  const Json& v = node(doc, path);
  if (!v.is_array()) throw ConfigError("config key /" + path + " must be an array");
  std::vector<double> out;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (!v[k].is_number()) {
      throw ConfigError("config key /" + path + "/" + std::to_string(k) + " must be a number");
    }
    out.push_back(v[k].get<double>());
  }
  return out;
}

void positive(double v, const std::string& path) {
  if (!(v > 0.0)) throw ConfigError("config key /" + path + " must be > 0");
}

}  // namespace

std::optional<Pulse> PulseSpec::build() const {
  Pulse p;
  if (type == "none") return std::nullopt;
  if (type == "impulsive") {
    p = Impulsive{area, phase};
  } else if (type == "exp_decay") {
    p = ExpDecay{area, gamma_a, delta};
  } else if (type == "constant") {
    p = Constant{omega0, delta};
  } else if (type == "sampled") {
    if (samples_path.empty()) throw ConfigError("config key /pulse/samples_path is required for sampled pulses");
    p = load_sampled(samples_path);
  } else {
    throw ConfigError("config key /pulse/type: unknown pulse type '" + type + "'");
  }
  validate_pulse(p);
  return p;
}

PhysicalParams RunConfig::physical() const {
  return PhysicalParams::from_alpha(alpha, gamma, lambda0_pm, r0_pm);
}

EnsembleGeometry RunConfig::geometry() const {
  return EnsembleGeometry::chain(n, r0_pm, periodic, phase_step);
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"fig2", "fig3", "fig4", "fig5", "peakdev", "custom"};
  return names;
}

Json preset_document(const std::string& preset) {
  Json doc = base_document();
  doc.merge_patch(preset_patch(preset));
  doc["preset"] = preset;
  return doc;
}

Json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  try {
    Json doc = Json::parse(in);
    if (!doc.is_object()) throw ConfigError("config file '" + path + "' must hold a JSON object");
    return doc;
  } catch (const Json::parse_error& e) {
    throw ConfigError("config file '" + path + "': " + e.what());
  }
}

RunConfig resolve_config(const std::string& preset, const Json& overrides, std::optional<double> tol) {
  std::string name = preset.empty() ? "custom" : preset;
  if (!overrides.is_null() && !overrides.is_object()) throw ConfigError("config must be a JSON object");
  if (overrides.is_object() && overrides.contains("preset")) {
    if (!overrides["preset"].is_string()) throw ConfigError("config key /preset must be a string");
    if (preset.empty()) name = overrides["preset"].get<std::string>();
  }
  if (std::find(preset_names().begin(), preset_names().end(), name) == preset_names().end()) {
    throw ConfigError("unknown preset '" + name + "'");
  }
  Json doc = preset_document(name);
  if (overrides.is_object()) {
    reject_unknown(overrides, doc, "");
    Json patch = overrides;
    patch.erase("preset");
    doc.merge_patch(patch);
  }
  if (tol) {
    if (!(*tol > 0.0)) throw ConfigError("--tol must be > 0");
    doc["solver"]["rtol"] = *tol;
    doc["solver"]["tol"] = *tol;
  }

  RunConfig c;
  c.preset = name;
  c.model = text(doc, "model");
  if (c.model != "bloch" && c.model != "manybody") {
    throw ConfigError("config key /model must be 'bloch' or 'manybody'");
  }
  c.gamma = num(doc, "params/gamma");
  c.alpha = num(doc, "params/alpha");
  c.lambda0_pm = num(doc, "params/lambda0_pm");
  c.r0_pm = num(doc, "params/r0_pm");
  c.n = count(doc, "params/n");
  c.periodic = flag(doc, "params/periodic");
  c.coupling_scale = num(doc, "params/coupling_scale");
  c.phase_step = kPi * num(doc, "geometry/phase_step_pi");
  positive(c.gamma, "params/gamma");
  positive(c.lambda0_pm, "params/lambda0_pm");
  positive(c.r0_pm, "params/r0_pm");
  if (c.n < 1 || c.n > kMaxNuclei) {
    throw ConfigError("config key /params/n must lie in [1, " + std::to_string(kMaxNuclei) + "]");
  }

  c.pulse.type = text(doc, "pulse/type");
  c.pulse.area = kPi * num(doc, "pulse/area_pi");
  c.pulse.phase = kPi * num(doc, "pulse/phase_pi");
  c.pulse.gamma_a = num(doc, "pulse/gamma_a");
  c.pulse.delta = num(doc, "pulse/delta");
  c.pulse.omega0 = num(doc, "pulse/omega0_amp");
  c.pulse.samples_path = text(doc, "pulse/samples_path");
  if (c.pulse.area < 0.0) throw ConfigError("config key /pulse/area_pi must be >= 0");
  positive(c.pulse.gamma_a, "pulse/gamma_a");

  for (double a : numbers(doc, "sweep/areas_pi")) {
    if (a < 0.0) throw ConfigError("config key /sweep/areas_pi entries must be >= 0");
    c.areas.push_back(kPi * a);
  }
  c.coupling_scales = numbers(doc, "sweep/coupling_scales");
  const std::size_t dpts = count(doc, "sweep/detuning_points");
  if (dpts < 1) throw ConfigError("config key /sweep/detuning_points must be >= 1");
  c.detunings = linspace(num(doc, "sweep/detuning_min"), num(doc, "sweep/detuning_max"), dpts);
  const std::size_t ppts = count(doc, "sweep/peak_area_points");
  if (ppts > 0) {
    for (double a : linspace(num(doc, "sweep/peak_area_min_pi"), num(doc, "sweep/peak_area_max_pi"), ppts)) {
      c.peak_areas.push_back(kPi * a);
    }
  }
  c.rabi_window = num(doc, "sweep/rabi_window");
  positive(c.rabi_window, "sweep/rabi_window");

  c.time.start = num(doc, "time/start");
  c.time.stop = num(doc, "time/stop");
  c.time.samples = count(doc, "time/samples");
  c.time.validate();

  c.ode.rtol = num(doc, "solver/rtol");
  c.ode.atol = num(doc, "solver/atol");
  positive(c.ode.rtol, "solver/rtol");
  positive(c.ode.atol, "solver/atol");
  c.ode.max_steps = count(doc, "solver/max_steps");
  if (c.ode.max_steps < 1) throw ConfigError("config key /solver/max_steps must be >= 1");
  c.manybody.dt = num(doc, "solver/dt");
  c.manybody.step_check = flag(doc, "solver/step_check");
  c.manybody.tol = num(doc, "solver/tol");
  c.manybody.probe_window = num(doc, "solver/probe_window");
  positive(c.manybody.dt, "solver/dt");
  positive(c.manybody.tol, "solver/tol");
  positive(c.manybody.probe_window, "solver/probe_window");

  c.ffc_padding = count(doc, "ffc/padding");
  if (c.ffc_padding < 1) throw ConfigError("config key /ffc/padding must be >= 1");
  c.ridge_band = num(doc, "ffc/band");

  c.document = std::move(doc);
  return c;
}

}  // namespace ler
