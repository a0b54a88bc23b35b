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
#include <vector>

#include "ler/ode.hpp"
#include "ler/pulses.hpp"
#include "ler/types.hpp"

namespace ler {

enum class SpectrumKind { TimeFrequency, FFC };

/// Rows are detunings; columns are times (TimeFrequency) or angular frequencies (FFC).
struct Spectrum2D {
  SpectrumKind kind = SpectrumKind::TimeFrequency;
  std::vector<double> detunings;
  std::vector<double> axis;
  Eigen::MatrixXd values;
  std::vector<bool> row_failed;
  std::string channel;  ///< "coh_sq" or "pop"
  double area = 0.0;
  double gamma_a = 0.0;
  std::string window = "rectangular";
  std::size_t padding = 1;
};

struct ScanResult {
  Spectrum2D coh_sq;
  Spectrum2D pop;
};

/// One Bloch run per detuning of `templ`, spread over `threads` workers, merged in grid order.
/// Rows whose integration fails are zero-filled and flagged in row_failed.
ScanResult detuning_scan(const ExpDecay& templ, double gamma, const std::vector<double>& detunings,
                         const TimeGrid& grid, const OdeOptions& opts = {}, unsigned threads = 1);

std::vector<double> linspace(double lo, double hi, std::size_t n);

inline constexpr double kLogFloor = 1e-12;

/// Per row: subtract the mean, rectangular window, zero-pad `padding`×, DFT, log10(|X|² + floor).
/// Frequency axis two-sided in units of γ. Throws GridError on non-uniform time grids.
Spectrum2D ffc_transform(const Spectrum2D& map, std::size_t padding = 4);

/// Ridge contrast along ω = ±slope·Δ over rows with |Δ| ≥ band. See the README for the statistic.
double diagonal_strength(const Spectrum2D& ffc, int slope, double gamma = 1.0, double band = 5.0);

/// CSV matrix (first row: axis grid, first column: detuning) plus `<path>.json` metadata.
void write_spectrum(const std::string& csv_path, const Spectrum2D& spectrum);

}  // namespace ler
