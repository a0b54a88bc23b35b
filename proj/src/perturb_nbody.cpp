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

#include "ler/perturb_nbody.hpp"

#include <array>
#include <cmath>
#include <random>
#include <string>

#include "ler/errors.hpp"
#include "ler/quadrature.hpp"

namespace ler {

namespace {

constexpr std::array<double, 4> kPade3{120.0, 60.0, 12.0, 1.0};
constexpr std::array<double, 6> kPade5{30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0};
constexpr std::array<double, 8> kPade7{17297280.0, 8648640.0, 1995840.0, 277200.0,
                                       25200.0,    1512.0,    56.0,      1.0};
constexpr std::array<double, 10> kPade9{17643225600.0, 8821612800.0, 2075673600.0, 302702400.0,
                                        30270240.0,    2162160.0,    110880.0,     3960.0,
                                        90.0,          1.0};
constexpr std::array<double, 14> kPade13{
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
    129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
    1323241920.0,        40840800.0,          960960.0,           16380.0,
    182.0,               1.0};
// Higham (2005), Table 2.3, double precision.
constexpr double kTheta3 = 1.495585217958292e-2;
constexpr double kTheta5 = 2.539398330063230e-1;
constexpr double kTheta7 = 9.504178996162932e-1;
constexpr double kTheta9 = 2.097847961257068e0;
constexpr double kTheta13 = 5.371920351148152e0;

template <std::size_t M>
CMatrix pade_low(const CMatrix& a, const std::array<double, M>& b) {
  const Eigen::Index n = a.rows();
  const CMatrix id = CMatrix::Identity(n, n);
  const CMatrix a2 = a * a;
  CMatrix pw = id;
  CMatrix u = CMatrix::Zero(n, n);
  CMatrix v = CMatrix::Zero(n, n);
  for (std::size_t k = 0; k + 1 < M; k += 2) {
    v += b[k] * pw;
    u += b[k + 1] * pw;
    pw = pw * a2;
  }
  u = a * u;
  return (v - u).partialPivLu().solve(v + u);
}

CMatrix pade13(const CMatrix& a) {
  const auto& b = kPade13;
  const Eigen::Index n = a.rows();
  const CMatrix id = CMatrix::Identity(n, n);
  const CMatrix a2 = a * a;
  const CMatrix a4 = a2 * a2;
  const CMatrix a6 = a4 * a2;
  const CMatrix u =
      a * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
  const CMatrix v =
      a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
  return (v - u).partialPivLu().solve(v + u);
}

}  // namespace

CMatrix matrix_exp(const CMatrix& m, double tau) {
  if (m.rows() != m.cols()) throw ConfigError("matrix_exp needs a square matrix");
  if (m.rows() > 64) throw CapacityError("matrix_exp supports N <= 64");
  if (!std::isfinite(tau)) throw DomainError("matrix_exp needs finite tau");
  const CMatrix a = m * tau;
  const double norm = a.cwiseAbs().colwise().sum().maxCoeff();
  if (!std::isfinite(norm)) throw RangeError("matrix_exp input is not finite");
  CMatrix r;
  if (norm <= kTheta3) {
    r = pade_low(a, kPade3);
  } else if (norm <= kTheta5) {
    r = pade_low(a, kPade5);
  } else if (norm <= kTheta7) {
    r = pade_low(a, kPade7);
  } else if (norm <= kTheta9) {
    r = pade_low(a, kPade9);
  } else {
    const int s = std::max(0, int(std::ceil(std::log2(norm / kTheta13))));
    if (s > 1000) throw RangeError("matrix_exp: norm too large for scaling and squaring");
    r = pade13(a * std::ldexp(1.0, -s));
    for (int k = 0; k < s; ++k) r = r * r;
  }
  if (!r.allFinite()) throw RangeError("matrix_exp overflowed");
  return r;
}

KernelCache::KernelCache(const CMatrix& kappa) : kappa_(kappa) {
  if (kappa.rows() != kappa.cols() || kappa.rows() == 0) {
    throw ConfigError("kernel matrix must be square and non-empty");
  }
  Eigen::ComplexEigenSolver<CMatrix> es(kappa_);
  if (es.info() == Eigen::Success) {
    lambda_ = es.eigenvalues();
    v_ = es.eigenvectors();
    Eigen::FullPivLU<CMatrix> lu(v_);
    if (lu.isInvertible()) {
      vinv_ = lu.inverse();
      std::mt19937_64 rng(20260101);
      std::uniform_real_distribution<double> dist(0.0, 10.0);
      for (int k = 0; k < 10; ++k) {
        const double tau = dist(rng);
        const CMatrix eig = v_ * (lambda_ * tau).array().exp().matrix().asDiagonal() * vinv_;
        recon_error_ = std::max(recon_error_, (eig - matrix_exp(kappa_, tau)).cwiseAbs().maxCoeff());
      }
      diagonalizable_ = recon_error_ < 1e-10;
    }
  }
}

CMatrix KernelCache::exp(double tau) const {
  if (diagonalizable_) {
    return v_ * (lambda_ * tau).array().exp().matrix().asDiagonal() * vinv_;
  }
  return matrix_exp(kappa_, tau);
}

namespace {

// ∫₀ᵗ Ω*(τ) e^{λ(t−τ)} dτ for the closed-form envelopes.
cplx drive_integral(cplx lambda, cplx rate, double amp, double t) {
  // Ω*(τ) = amp·e^{rate·τ}
  const cplx c = rate - lambda;
  if (std::abs(c * t) < 1.0) return amp * std::exp(lambda * t) * t * exprel(c * t);
  return amp * (std::exp(rate * t) - std::exp(lambda * t)) / c;
}

std::vector<cplx> drive_weights(const EnsembleGeometry& g) {
  std::vector<cplx> w(g.n);
  for (std::size_t k = 0; k < g.n; ++k) w[k] = std::polar(1.0, g.phase_in[k]);
  return w;
}

}  // namespace

std::vector<cplx> coherence_first_order(const KernelCache& kernel, const EnsembleGeometry& geometry,
                                        const Pulse& pulse, double t) {
  geometry.validate();
  validate_pulse(pulse);
  const auto n = Eigen::Index(geometry.n);
  if (kernel.kappa().rows() != n) throw ConfigError("kernel size does not match geometry");
  std::vector<cplx> out(geometry.n, cplx{0.0, 0.0});
  const auto w = drive_weights(geometry);
  CVector src(n);
  for (Eigen::Index k = 0; k < n; ++k) src[k] = w[std::size_t(k)];

  if (const auto* p = std::get_if<Impulsive>(&pulse)) {
    // First-order impulsive start −i𝒜e^{iφ_n}, then free propagation.
    if (t < 0.0) return out;
    const CVector rho = kernel.exp(t).transpose() * (-kI * p->area * src);
    for (Eigen::Index x = 0; x < n; ++x) out[std::size_t(x)] = rho[x];
    return out;
  }
  if (t <= 0.0) return out;

  double amp = 0.0;
  cplx rate{0.0, 0.0};
  bool closed = true;
  if (const auto* p = std::get_if<ExpDecay>(&pulse)) {
    amp = 2.0 * p->decay_rate * p->area;
    rate = cplx{-p->decay_rate, p->detuning};
  } else if (const auto* p = std::get_if<Constant>(&pulse)) {
    amp = p->amplitude;
    rate = cplx{0.0, p->detuning};
  } else {
    closed = false;
  }

  CVector rho = CVector::Zero(n);
  if (kernel.diagonalizable()) {
    // ρ_x = −(i/2) Σ_k [Σ_n e^{iφ_n} V_nk] (V⁻¹)_kx I_k(t)
    const CVector proj = kernel.right().transpose() * src;
    CVector ik(n);
    for (Eigen::Index k = 0; k < n; ++k) {
      const cplx lam = kernel.eigenvalues()[k];
      if (closed) {
        ik[k] = drive_integral(lam, rate, amp, t);
      } else {
        const auto& s = std::get<Sampled>(pulse);
        auto f = [&](double tau) { return std::conj(evaluate(pulse, tau)) * std::exp(lam * (t - tau)); };
        const double hi = std::min(t, s.t.back());
        cplx acc{0.0, 0.0};
        for (std::size_t j = 1; j < s.t.size() && s.t[j - 1] < hi; ++j) {
          acc += adaptive_simpson(f, std::max(0.0, s.t[j - 1]), std::min(s.t[j], hi),
                                  1e-10 / double(s.t.size()));
        }
        ik[k] = acc;
      }
    }
    rho = -0.5 * kI * (kernel.left().transpose() * proj.cwiseProduct(ik));
  } else {
    // Sampled-kernel Simpson, 2000 points per unit time.
    const auto intervals = std::size_t(2 * std::ceil(1000.0 * t));
    const double h = t / double(intervals);
    std::vector<std::vector<cplx>> samples(std::size_t(n), std::vector<cplx>(intervals + 1));
    for (std::size_t j = 0; j <= intervals; ++j) {
      const double tau = double(j) * h;
      const CVector v = kernel.exp(t - tau).transpose() * src * std::conj(evaluate(pulse, tau));
      for (Eigen::Index x = 0; x < n; ++x) samples[std::size_t(x)][j] = v[x];
    }
    for (Eigen::Index x = 0; x < n; ++x) rho[x] = -0.5 * kI * simpson_uniform(samples[std::size_t(x)], h);
  }
  for (Eigen::Index x = 0; x < n; ++x) out[std::size_t(x)] = rho[x];
  return out;
}

std::vector<cplx> coherence_first_order(const CouplingSet& couplings,
                                        const EnsembleGeometry& geometry, const Pulse& pulse,
                                        double t) {
  return coherence_first_order(KernelCache(couplings.kappa), geometry, pulse, t);
}

std::vector<double> population_second_order(const KernelCache& kernel,
                                            const EnsembleGeometry& geometry, const Pulse& pulse,
                                            double t) {
  const auto c = coherence_first_order(kernel, geometry, pulse, t);
  std::vector<double> out(c.size());
  for (std::size_t k = 0; k < c.size(); ++k) out[k] = std::norm(c[k]);
  return out;
}

std::vector<double> population_second_order(const CouplingSet& couplings,
                                            const EnsembleGeometry& geometry, const Pulse& pulse,
                                            double t) {
  return population_second_order(KernelCache(couplings.kappa), geometry, pulse, t);
}

}  // namespace ler
