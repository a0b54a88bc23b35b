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
#include <vector>

#include "ler/types.hpp"

namespace ler {

/// Line widths and lengths for an ensemble of identical two-level nuclei.
///
/// Rates are in units of the total width γ, which is also the inverse time
/// unit of every simulation (γ = 1 by convention). Lengths only enter through
/// the ratio r0 / λ0, so any common unit works; the config file uses pm.
struct PhysicalParams {
  double gamma = 1.0;
  double alpha = 0.0;      ///< internal conversion coefficient
  double gamma_rad = 0.5;  ///< radiative rate Γ_nn
  double gamma_ic = 0.0;   ///< internal-conversion rate Γ_IC
  double lambda0 = 1.0;    ///< resonant wavelength
  double r0 = 1.0;         ///< lattice constant

  /// Splits γ into radiative and conversion parts, Γ_nn = γ / [2(1 + α)].
  static PhysicalParams from_alpha(double alpha, double gamma, double lambda0, double r0);

  /// 2 (Γ_nn + Γ_IC), which must reproduce `gamma`.
  double total_width() const { return 2.0 * (gamma_rad + gamma_ic); }

  /// Throws ConfigError if a rate or length is non-positive or the width partition is broken.
  void validate() const;
};

/// Nuclei on a 1-D chain, with the phases imprinted by the drive and picked
/// up on detection. Phase convention: φ_n = −k·r_n, so a phase-matched
/// detector has phase_out == phase_in.
struct EnsembleGeometry {
  std::size_t n = 1;
  std::vector<double> positions;
  bool periodic = false;
  double period = 0.0;  ///< ring circumference when periodic
  std::vector<double> phase_in;
  std::vector<double> phase_out;

  /// r_n = n·r0, φ_n = n·phase_step, detection phase-matched.
  static EnsembleGeometry chain(std::size_t n, double r0, bool periodic, double phase_step);

  /// |r_n − r_m|, using the minimum image on a ring.
  double separation(std::size_t a, std::size_t b) const;

  void validate() const;
};

/// Coherent (J) and incoherent (Γ) couplings plus the first-order kernel 𝒦.
struct CouplingSet {
  CMatrix j;
  CMatrix gamma_mat;
  double gamma_ic = 0.0;
  CMatrix kappa;

  std::size_t size() const { return std::size_t(j.rows()); }
};

/// Free-space dipole-dipole shifts for dipoles perpendicular to the chain:
/// J⁰ = (3/2) Γ_nn [cos η/η − sin η/η² − cos η/η³], η = 2π r / λ0.
CMatrix free_space_j(const PhysicalParams& params, const EnsembleGeometry& geometry);

/// Entrywise `factor * j`.
CMatrix scale_coupling(const CMatrix& j, double factor);

/// κ_nm = −(Γ_nm + i J_nm) − Γ_IC δ_nm, rotating frame (no iω0 term).
CMatrix build_kappa(const CMatrix& j, const CMatrix& gamma_mat, double gamma_ic);

/// Validates J and Γ, then fills in kappa.
CouplingSet make_couplings(CMatrix j, CMatrix gamma_mat, double gamma_ic);

/// Free-space J scaled by `coupling_scale`, diagonal Γ = Γ_nn, no incoherent
/// cross terms.
CouplingSet chain_couplings(const PhysicalParams& params, const EnsembleGeometry& geometry,
                            double coupling_scale);

/// Uncoupled ensemble of n nuclei with total width `gamma` split as in `params`.
CouplingSet independent_couplings(const PhysicalParams& params, std::size_t n);

}  // namespace ler
