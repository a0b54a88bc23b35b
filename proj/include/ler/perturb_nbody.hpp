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

#include <vector>

#include "ler/params.hpp"
#include "ler/pulses.hpp"
#include "ler/types.hpp"

namespace ler {

/// e^{mτ} by scaling and squaring with a diagonal Padé approximant. Throws RangeError on overflow.
CMatrix matrix_exp(const CMatrix& m, double tau);

/// One eigendecomposition of 𝒦 reused for every kernel evaluation. Falls back to
/// matrix_exp samples when the eigenbasis does not reproduce e^{𝒦τ} to 1e-10.
class KernelCache {
 public:
  explicit KernelCache(const CMatrix& kappa);

  const CMatrix& kappa() const { return kappa_; }
  bool diagonalizable() const { return diagonalizable_; }
  double reconstruction_error() const { return recon_error_; }
  const CVector& eigenvalues() const { return lambda_; }
  const CMatrix& right() const { return v_; }
  const CMatrix& left() const { return vinv_; }

  CMatrix exp(double tau) const;

 private:
  CMatrix kappa_;
  CVector lambda_;
  CMatrix v_;
  CMatrix vinv_;
  bool diagonalizable_ = false;
  double recon_error_ = 0.0;
};

/// ρ^(1)_{g_x e_x}(t) for every nucleus x, driven with Ω_n = Ω e^{−iφ_n} (φ = phase_in).
std::vector<cplx> coherence_first_order(const KernelCache& kernel, const EnsembleGeometry& geometry,
                                        const Pulse& pulse, double t);
std::vector<cplx> coherence_first_order(const CouplingSet& couplings,
                                        const EnsembleGeometry& geometry, const Pulse& pulse,
                                        double t);

/// |ρ^(1)_{g_x e_x}(t)|² per nucleus.
std::vector<double> population_second_order(const KernelCache& kernel,
                                            const EnsembleGeometry& geometry, const Pulse& pulse,
                                            double t);
std::vector<double> population_second_order(const CouplingSet& couplings,
                                            const EnsembleGeometry& geometry, const Pulse& pulse,
                                            double t);

}  // namespace ler
