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

#include "ler/params.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ler/errors.hpp"

namespace ler {

namespace {

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw ConfigError(std::string(name) + " must be finite and > 0, got " + std::to_string(value));
  }
}

bool is_hermitian(const CMatrix& m, double tol) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol * std::max(1.0, m.cwiseAbs().maxCoeff());
}

}  // namespace

PhysicalParams PhysicalParams::from_alpha(double alpha, double gamma, double lambda0, double r0) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw ConfigError("alpha must be finite and >= 0");
  }
  require_positive(gamma, "gamma");
  PhysicalParams p;
  p.gamma = gamma;
  p.alpha = alpha;
  p.gamma_rad = gamma / (2.0 * (1.0 + alpha));
  p.gamma_ic = 0.5 * gamma - p.gamma_rad;
  p.lambda0 = lambda0;
  p.r0 = r0;
  p.validate();
  return p;
}

void PhysicalParams::validate() const {
  require_positive(gamma, "gamma");
  require_positive(gamma_rad, "gamma_rad");
  require_positive(lambda0, "lambda0");
  require_positive(r0, "r0");
  if (!(gamma_ic >= 0.0)) {
    throw ConfigError("gamma_ic must be >= 0");
  }
  if (std::abs(total_width() - gamma) > 1e-14 * gamma) {
    throw ConfigError("line-width partition broken: 2(gamma_rad + gamma_ic) != gamma");
  }
}

EnsembleGeometry EnsembleGeometry::chain(std::size_t n, double r0, bool periodic,
                                         double phase_step) {
  if (n == 0) {
    throw ConfigError("chain needs at least one nucleus");
  }
  require_positive(r0, "r0");
  EnsembleGeometry g;
  g.n = n;
  g.periodic = periodic;
  g.period = periodic ? double(n) * r0 : 0.0;
  g.positions.resize(n);
  g.phase_in.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    g.positions[k] = double(k) * r0;
    g.phase_in[k] = double(k) * phase_step;
  }
  g.phase_out = g.phase_in;
  return g;
}

double EnsembleGeometry::separation(std::size_t a, std::size_t b) const {
  double d = std::abs(positions[a] - positions[b]);
  if (periodic && period > 0.0) {
    d = std::fmod(d, period);
    d = std::min(d, period - d);
  }
  return d;
}

void EnsembleGeometry::validate() const {
  if (n == 0) {
    throw ConfigError("geometry has no nuclei");
  }
  if (positions.size() != n || phase_in.size() != n || phase_out.size() != n) {
    throw ConfigError("geometry arrays must all have length n = " + std::to_string(n));
  }
  if (periodic && !(period > 0.0)) {
    throw ConfigError("periodic geometry needs a positive period");
  }
}

CMatrix free_space_j(const PhysicalParams& params, const EnsembleGeometry& geometry) {
  params.validate();
  geometry.validate();
  const std::size_t n = geometry.n;
  const double k0 = 2.0 * kPi / params.lambda0;
  CMatrix j = CMatrix::Zero(Eigen::Index(n), Eigen::Index(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const double eta = k0 * geometry.separation(a, b);
      if (!(eta > 0.0)) {
        throw SingularGeometryError("nuclei " + std::to_string(a) + " and " + std::to_string(b) +
                                    " coincide");
      }
      const double c = std::cos(eta);
      const double s = std::sin(eta);
      const double value =
          1.5 * params.gamma_rad * (c / eta - s / (eta * eta) - c / (eta * eta * eta));
      j(Eigen::Index(a), Eigen::Index(b)) = value;
      j(Eigen::Index(b), Eigen::Index(a)) = value;
    }
  }
  return j;
}

CMatrix scale_coupling(const CMatrix& j, double factor) {
  if (!std::isfinite(factor)) {
    throw ConfigError("coupling scale must be finite");
  }
  return j * factor;
}

CMatrix build_kappa(const CMatrix& j, const CMatrix& gamma_mat, double gamma_ic) {
  if (j.rows() != j.cols() || gamma_mat.rows() != gamma_mat.cols() || j.rows() != gamma_mat.rows()) {
    throw ConfigError("J and Gamma must be square matrices of the same size");
  }
  CMatrix kappa = -(gamma_mat + kI * j);
  kappa.diagonal().array() -= gamma_ic;
  return kappa;
}

CouplingSet make_couplings(CMatrix j, CMatrix gamma_mat, double gamma_ic) {
  if (!is_hermitian(j, 1e-12)) {
    throw ConfigError("J must be Hermitian");
  }
  if (gamma_mat.rows() == j.rows() && !is_hermitian(gamma_mat, 1e-12)) {
    throw ConfigError("Gamma must be Hermitian");
  }
  for (Eigen::Index k = 0; k < gamma_mat.rows(); ++k) {
    if (gamma_mat(k, k).real() < 0.0) {
      throw ConfigError("Gamma diagonal must be non-negative");
    }
  }
  if (!(gamma_ic >= 0.0)) {
    throw ConfigError("gamma_ic must be >= 0");
  }
  CouplingSet c;
  c.kappa = build_kappa(j, gamma_mat, gamma_ic);
  c.j = std::move(j);
  c.gamma_mat = std::move(gamma_mat);
  c.gamma_ic = gamma_ic;
  return c;
}

CouplingSet chain_couplings(const PhysicalParams& params, const EnsembleGeometry& geometry,
                            double coupling_scale) {
  CMatrix j = geometry.n > 1 ? scale_coupling(free_space_j(params, geometry), coupling_scale)
                             : CMatrix::Zero(1, 1);
  CMatrix g = CMatrix::Identity(Eigen::Index(geometry.n), Eigen::Index(geometry.n)) *
              params.gamma_rad;
  return make_couplings(std::move(j), std::move(g), params.gamma_ic);
}

CouplingSet independent_couplings(const PhysicalParams& params, std::size_t n) {
  const auto dim = Eigen::Index(n);
  return make_couplings(CMatrix::Zero(dim, dim), CMatrix::Identity(dim, dim) * params.gamma_rad,
                        params.gamma_ic);
}

}  // namespace ler
