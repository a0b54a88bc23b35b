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

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ler/params.hpp"
#include "ler/pulses.hpp"
#include "ler/types.hpp"

namespace ler {

using RowMatrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

inline constexpr std::size_t kMaxNuclei = 12;

/// 2^N × 2^N state; bit n of a basis index is nucleus n (1 = excited).
class DensityMatrix {
 public:
  explicit DensityMatrix(std::size_t n);  ///< |G⟩⟨G|
  DensityMatrix(std::size_t n, RowMatrix entries);

  std::size_t nuclei() const { return n_; }
  std::size_t dim() const { return std::size_t(rho_.rows()); }
  const RowMatrix& entries() const { return rho_; }
  RowMatrix& entries() { return rho_; }

  cplx trace() const { return rho_.trace(); }
  double hermiticity_error() const;
  double min_eigenvalue() const;
  void hermitize();

  /// ⟨σ⁺_n⟩ = Tr(ρ σ⁺_n).
  cplx sigma_plus(std::size_t n) const;
  /// ⟨σ⁺_n σ⁻_n⟩.
  double population(std::size_t n) const;
  double total_excitation() const;

 private:
  std::size_t n_;
  RowMatrix rho_;
};

/// Per-nucleus drive Ω_n(t) = Ω(t) e^{−iφ_n}.
struct Drive {
  Pulse pulse;
  std::vector<double> phase_in;

  std::vector<cplx> at(double t) const;
};

/// Writes dρ/dt into `out` (resized as needed).
void lindblad_rhs(const DensityMatrix& rho, const CouplingSet& couplings,
                  const std::vector<cplx>& drive, RowMatrix& out);

DensityMatrix prepare_impulsive(const EnsembleGeometry& geometry, double area);

struct ManyBodyOptions {
  double dt = 1e-3;
  /// Probe the first `probe_window` of the run at dt and dt/2 and halve dt until
  /// observables agree to `tol`.
  bool step_check = false;
  double tol = 1e-8;
  double probe_window = 0.5;
  std::size_t max_halvings = 8;
  std::size_t hermitize_every = 100;
  /// Without a drive, evolve only the blocks that carry populations and ⟨σ⁺⟩
  /// (excitation numbers k→k and k→k+1). These never feed the other blocks.
  bool block_reduction = true;
};

struct ManyBodyTrajectory {
  std::vector<double> times;
  std::vector<std::vector<cplx>> sigma_plus;   ///< [time][nucleus]
  std::vector<std::vector<double>> population;  ///< [time][nucleus]
  double dt_used = 0.0;
  double max_trace_error = 0.0;
  double max_hermiticity_error = 0.0;
  /// Full state at the last sample; absent when the block-reduced path ran.
  std::optional<DensityMatrix> final_state;

  std::size_t nuclei() const { return population.empty() ? 0 : population.front().size(); }
};

/// Fixed-step RK4 from rho0, sampled on `grid`. Throws IntegrationFailure on trace drift > 1e-6.
ManyBodyTrajectory evolve(const DensityMatrix& rho0, const CouplingSet& couplings,
                          const std::optional<Drive>& drive, const TimeGrid& grid,
                          const ManyBodyOptions& opts = {});

void write_manybody_csv(const std::string& path, const ManyBodyTrajectory& traj);

}  // namespace ler
