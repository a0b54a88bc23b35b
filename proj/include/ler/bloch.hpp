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

#include "ler/ode.hpp"
#include "ler/pulses.hpp"
#include "ler/types.hpp"

namespace ler {

struct BlochTrajectory {
  std::vector<double> times;
  std::vector<TwoLevelState> states;

  std::vector<double> populations() const;
  std::vector<double> coherence_squared() const;
};

/// Optical Bloch equations in the rotating frame, sampled on `grid`.
/// An Impulsive pulse prepares impulsive_state at t = grid.start and then evolves freely.
BlochTrajectory integrate_bloch(const Pulse& pulse, double gamma, const TimeGrid& grid,
                                const OdeOptions& opts = {},
                                std::optional<TwoLevelState> initial = std::nullopt);

/// Exact free decay after an impulsive excitation.
BlochTrajectory impulsive_decay(double area, double phase, double gamma,
                                const std::vector<double>& times);

/// First-order coherence ρ_ge^(1)(t) from a ground-state start.
cplx perturbative_coherence_1(const Pulse& pulse, double gamma, double t);

/// Second-order population, |ρ_ge^(1)|².
double perturbative_population_2(const Pulse& pulse, double gamma, double t);

// Undamped (γ = 0) constant drive, Δ ≠ 0. All throw DomainError on resonance.
cplx perturbative_coherence_3(const Constant& drive, double t);
double coherence_squared_2(const Constant& drive, double t);
/// Fourth-order part of |ρ_ge|², built from 2 Re[ρ^(1)* ρ^(3)].
double coherence_squared_4(const Constant& drive, double t);
/// Fourth-order part of ρ_ee.
double perturbative_population_4(const Constant& drive, double t);

/// Exact undamped Rabi solution with Ω_Δ = √(Ω₀² + Δ²).
TwoLevelState rabi_solution(const Constant& drive, double t);

void write_bloch_csv(const std::string& path, const BlochTrajectory& traj);

}  // namespace ler
