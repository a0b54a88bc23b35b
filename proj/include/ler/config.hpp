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

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ler/manybody.hpp"
#include "ler/ode.hpp"
#include "ler/params.hpp"
#include "ler/pulses.hpp"
#include "ler/types.hpp"

namespace ler {

using Json = nlohmann::ordered_json;

struct PulseSpec {
  std::string type = "exp_decay";  ///< impulsive | exp_decay | constant | sampled | none
  double area = 0.0;               ///< radians
  double phase = 0.0;              ///< radians, impulsive only
  double gamma_a = 2.5;
  double delta = 0.0;
  double omega0 = 0.0;
  std::string samples_path;

  /// std::nullopt for type "none" (Ω ≡ 0).
  std::optional<Pulse> build() const;
};

struct RunConfig {
  std::string preset = "custom";
  std::string model = "bloch";  ///< bloch | manybody (custom preset)

  double gamma = 1.0;
  double alpha = 8.56;
  double lambda0_pm = 86.0;
  double r0_pm = 286.0;
  std::size_t n = 1;
  bool periodic = false;
  double coupling_scale = 1.0;
  double phase_step = 0.0;  ///< radians between neighbours

  PulseSpec pulse;

  std::vector<double> areas;  ///< radians
  std::vector<double> coupling_scales;
  std::vector<double> detunings;
  std::vector<double> peak_areas;  ///< radians
  double rabi_window = 0.6;

  TimeGrid time;
  OdeOptions ode;
  ManyBodyOptions manybody;
  std::size_t ffc_padding = 4;
  double ridge_band = 5.0;

  Json document;  ///< fully merged configuration, echoed into the manifest

  PhysicalParams physical() const;
  EnsembleGeometry geometry() const;
};

const std::vector<std::string>& preset_names();

/// Defaults for `preset`, every key the schema knows about included.
Json preset_document(const std::string& preset);

/// Parses a JSON config file. Throws ConfigError with the file name on syntax errors.
Json load_config_file(const std::string& path);

/// Merges `overrides` onto the preset defaults, rejects unknown keys by path and type-checks
/// every field. A non-empty `preset` wins over a "preset" key inside `overrides`.
RunConfig resolve_config(const std::string& preset, const Json& overrides,
                         std::optional<double> tol = std::nullopt);

}  // namespace ler
