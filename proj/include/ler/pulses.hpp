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

#include <string>
#include <variant>
#include <vector>

#include "ler/types.hpp"

namespace ler {

/// Instantaneous excitation of area 𝒜 imprinted with phase φ. Acts only through impulsive_state.
struct Impulsive {
  double area = 0.0;
  double phase = 0.0;
};

/// Ω(t) = 2Γ_a𝒜 e^{−iΔt} e^{−Γ_a t} for t ≥ 0.
struct ExpDecay {
  double area = 0.0;
  double decay_rate = 2.5;
  double detuning = 0.0;
};

/// Ω(t) = Ω₀ e^{−iΔt} for all t.
struct Constant {
  double amplitude = 0.0;
  double detuning = 0.0;
};

/// Linearly interpolated envelope, zero outside the sample grid.
struct Sampled {
  std::vector<double> t;
  std::vector<cplx> omega;
};

using Pulse = std::variant<Impulsive, ExpDecay, Constant, Sampled>;

struct TwoLevelState {
  double rho_ee = 0.0;
  cplx rho_ge{0.0, 0.0};
};

/// Throws ConfigError on negative areas, non-positive decay rates or malformed samples.
void validate_pulse(const Pulse& pulse);

/// Rotating-frame Rabi amplitude. Impulsive pulses throw UnsupportedOperation.
cplx evaluate(const Pulse& pulse, double t);

/// ½∫₀ᵗ|Ω(t′)|dt′.
double pulse_area(const Pulse& pulse, double t);

bool is_impulsive(const Pulse& pulse);

/// ρ_ee = sin²𝒜, ρ_ge = −(i/2)e^{iφ} sin 2𝒜.
TwoLevelState impulsive_state(double area, double phase);

std::string pulse_name(const Pulse& pulse);

/// Reads a CSV with columns t, Re Ω, Im Ω (an optional header line is skipped).
Sampled load_sampled(const std::string& path);

}  // namespace ler
