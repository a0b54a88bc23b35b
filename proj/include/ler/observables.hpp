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

#include "ler/bloch.hpp"
#include "ler/manybody.hpp"
#include "ler/params.hpp"

namespace ler {

/// Populations below this floor leave the ratio undefined.
inline constexpr double kIncoherentFloor = 1e-12;

struct ObservableSeries {
  std::size_t nuclei = 1;
  std::vector<double> times;
  std::vector<double> i_coh;
  std::vector<double> i_inc;
  std::vector<std::optional<double>> ratio;  ///< ℛ(t) = I_coh / (N·I_inc)
};

/// I_inc = Σ_n p_n, I_coh = |Σ_n e^{−iφ_out,n}⟨σ⁺_n⟩|².
ObservableSeries intensities(const ManyBodyTrajectory& traj, const EnsembleGeometry& geometry);
/// Single nucleus with zero detection phase.
ObservableSeries intensities(const BlochTrajectory& traj);

void write_observables_csv(const std::string& path, const ObservableSeries& series);

struct PeakReport {
  double t_coh_max = 0.0;
  double t_pop_max = 0.0;
  double peak_deviation = 0.0;
};

/// Time of the first strict local maximum, refined by a parabola through the bracketing samples.
/// Throws NoPeakError for monotone series.
double first_peak_time(const std::vector<double>& times, const std::vector<double>& values);

PeakReport peak_analysis(const std::vector<double>& times, const std::vector<double>& coh_sq,
                         const std::vector<double>& pop);

std::string peak_report_json(const PeakReport& report);

struct FrequencyEstimate {
  double omega = 0.0;      ///< angular frequency of the dominant line
  double bin_width = 0.0;  ///< spacing of the padded DFT grid
  bool low_confidence = false;
};

/// Dominant non-zero angular frequency inside [t_lo, t_hi] after mean removal, a Hann
/// window and 4× zero padding. Flags windows covering fewer than two periods.
FrequencyEstimate dominant_frequency(const std::vector<double>& times,
                                     const std::vector<double>& values, double t_lo, double t_hi);

}  // namespace ler
