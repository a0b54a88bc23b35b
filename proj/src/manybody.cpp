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

#include "ler/manybody.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cmath>
#include <string>

#include "ler/csv.hpp"
#include "ler/errors.hpp"

namespace ler {

namespace {

void check_capacity(std::size_t n) {
  if (n == 0) throw ConfigError("ensemble needs at least one nucleus");
  if (n > kMaxNuclei) {
    throw CapacityError("N = " + std::to_string(n) + " exceeds the limit of " +
                        std::to_string(kMaxNuclei) + " nuclei");
  }
}

// out(i, j) += c · ρ(i | bl, j | br) over rows with bit bl clear and columns with bit br clear,
// i.e. out += c · σ⁻_l ρ σ⁺_r.
void add_jump(const RowMatrix& rho, std::size_t bl, std::size_t br, cplx c, RowMatrix& out) {
  const Eigen::Index dim = rho.rows();
  const Eigen::Index ml = Eigen::Index(1) << bl;
  const Eigen::Index mr = Eigen::Index(1) << br;
  for (Eigen::Index i = 0; i < dim; ++i) {
    if (i & ml) continue;
    for (Eigen::Index j0 = 0; j0 < dim; j0 += 2 * mr) {
      out.row(i).segment(j0, mr) += c * rho.row(i | ml).segment(j0 + mr, mr);
    }
  }
}

}  // namespace

DensityMatrix::DensityMatrix(std::size_t n) : n_(n) {
  check_capacity(n);
  const Eigen::Index dim = Eigen::Index(1) << n;
  rho_ = RowMatrix::Zero(dim, dim);
  rho_(0, 0) = 1.0;
}

DensityMatrix::DensityMatrix(std::size_t n, RowMatrix entries) : n_(n), rho_(std::move(entries)) {
  check_capacity(n);
  const Eigen::Index dim = Eigen::Index(1) << n;
  if (rho_.rows() != dim || rho_.cols() != dim) {
    throw ConfigError("density matrix must be 2^N x 2^N");
  }
}

double DensityMatrix::hermiticity_error() const {
  return (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const {
  const Eigen::MatrixXcd h = 0.5 * (rho_ + rho_.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

void DensityMatrix::hermitize() {
  RowMatrix h = 0.5 * (rho_ + rho_.adjoint());
  rho_.swap(h);
}

cplx DensityMatrix::sigma_plus(std::size_t n) const {
  const Eigen::Index m = Eigen::Index(1) << n;
  cplx acc{0.0, 0.0};
  for (Eigen::Index i = 0; i < rho_.rows(); ++i) {
    if (i & m) acc += rho_(i ^ m, i);
  }
  return acc;
}

double DensityMatrix::population(std::size_t n) const {
  const Eigen::Index m = Eigen::Index(1) << n;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < rho_.rows(); ++i) {
    if (i & m) acc += rho_(i, i).real();
  }
  return acc;
}

double DensityMatrix::total_excitation() const {
  double acc = 0.0;
  for (std::size_t n = 0; n < n_; ++n) acc += population(n);
  return acc;
}

std::vector<cplx> Drive::at(double t) const {
  const cplx omega = evaluate(pulse, t);
  std::vector<cplx> out(phase_in.size());
  for (std::size_t n = 0; n < phase_in.size(); ++n) out[n] = omega * std::polar(1.0, -phase_in[n]);
  return out;
}

void lindblad_rhs(const DensityMatrix& state, const CouplingSet& c, const std::vector<cplx>& drive,
                  RowMatrix& out) {
  const std::size_t n = state.nuclei();
  check_capacity(n);
  if (c.size() != n || (!drive.empty() && drive.size() != n)) {
    throw ConfigError("coupling/drive dimension does not match the density matrix");
  }
  const RowMatrix& rho = state.entries();
  const Eigen::Index dim = rho.rows();

  // Y = −i H_eff ρ with H_eff = H − i Σ Γ̃_nm σ⁺_n σ⁻_m and Γ̃ = Γ + Γ_IC·1.
  RowMatrix y(dim, dim);
  {
    Eigen::VectorXd decay = Eigen::VectorXd::Zero(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        if (i & (Eigen::Index(1) << k)) decay[i] += c.gamma_mat(k, k).real() + c.gamma_ic;
      }
    }
    for (Eigen::Index i = 0; i < dim; ++i) y.row(i) = -decay[i] * rho.row(i);
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b) continue;
      // −i·(−J_ab − iΓ_ab) = iJ_ab − Γ_ab on σ⁺_a σ⁻_b.
      const cplx coef = kI * c.j(a, b) - c.gamma_mat(a, b);
      if (coef == cplx{0.0, 0.0}) continue;
      const Eigen::Index ma = Eigen::Index(1) << a;
      const Eigen::Index mb = Eigen::Index(1) << b;
      for (Eigen::Index i = 0; i < dim; ++i) {
        if ((i & ma) && !(i & mb)) y.row(i) += coef * rho.row(i ^ ma ^ mb);
      }
    }
  }
  if (!drive.empty()) {
    for (std::size_t k = 0; k < n; ++k) {
      if (drive[k] == cplx{0.0, 0.0}) continue;
      // −i·(−Ω/2) σ⁺ and −i·(−Ω*/2) σ⁻.
      const cplx up = 0.5 * kI * drive[k];
      const cplx down = 0.5 * kI * std::conj(drive[k]);
      const Eigen::Index m = Eigen::Index(1) << k;
      for (Eigen::Index i = 0; i < dim; ++i) {
        if (i & m) {
          y.row(i) += up * rho.row(i ^ m);
        } else {
          y.row(i) += down * rho.row(i | m);
        }
      }
    }
  }

  out = y + y.adjoint();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      // 2 Γ̃_ab σ⁻_b ρ σ⁺_a.
      cplx g = c.gamma_mat(a, b);
      if (a == b) g += c.gamma_ic;
      if (g == cplx{0.0, 0.0}) continue;
      add_jump(rho, b, a, 2.0 * g, out);
    }
  }
}

DensityMatrix prepare_impulsive(const EnsembleGeometry& geometry, double area) {
  geometry.validate();
  const std::size_t n = geometry.n;
  check_capacity(n);
  if (!(area >= 0.0)) throw ConfigError("pulse area must be >= 0");
  const Eigen::Index dim = Eigen::Index(1) << n;
  Eigen::VectorXcd psi(dim);
  const double cg = std::cos(area);
  const double se = std::sin(area);
  for (Eigen::Index i = 0; i < dim; ++i) {
    cplx amp{1.0, 0.0};
    for (std::size_t k = 0; k < n; ++k) {
      amp *= (i & (Eigen::Index(1) << k)) ? kI * std::polar(1.0, -geometry.phase_in[k]) * se
                                          : cplx{cg, 0.0};
    }
    psi[i] = amp;
  }
  return DensityMatrix(n, psi * psi.adjoint());
}

namespace {

// Full 2^N × 2^N propagation through lindblad_rhs.
class FullModel {
 public:
  using State = DensityMatrix;

  FullModel(const CouplingSet& c, const std::optional<Drive>& drive) : c_(c), drive_(drive) {}

  State zero_like(const State& s) const {
    return DensityMatrix(s.nuclei(), RowMatrix::Zero(Eigen::Index(s.dim()), Eigen::Index(s.dim())));
  }
  void rhs(const State& s, double t, State& out) const {
    lindblad_rhs(s, c_, drive_ ? drive_->at(t) : std::vector<cplx>{}, out.entries());
  }
  static void stage(State& dst, const State& base, double h, const State& k) {
    dst.entries() = base.entries() + h * k.entries();
  }
  static void advance(State& s, double h, const State& k1, const State& k2, const State& k3,
                      const State& k4) {
    s.entries() += (h / 6.0) * (k1.entries() + 2.0 * k2.entries() + 2.0 * k3.entries() + k4.entries());
  }
  static void observe(const State& s, std::vector<cplx>& sp, std::vector<double>& p) {
    for (std::size_t k = 0; k < s.nuclei(); ++k) {
      sp[k] = s.sigma_plus(k);
      p[k] = s.population(k);
    }
  }
  static cplx trace(const State& s) { return s.trace(); }
  static double hermiticity_error(const State& s) { return s.hermiticity_error(); }
  static void hermitize(State& s) { s.hermitize(); }

 private:
  const CouplingSet& c_;
  const std::optional<Drive>& drive_;
};

// Drive-free propagation restricted to the excitation-number blocks D_k = ρ[k,k]
// and U_k = ρ[k,k+1]. H_eff conserves excitation number and the jump term maps
// block (k+1, k'+1) into (k, k'), so these blocks close on themselves.
class SectorModel {
 public:
  struct State {
    std::vector<RowMatrix> d;
    std::vector<RowMatrix> u;
  };

  SectorModel(const CouplingSet& c, std::size_t n) : n_(n) {
    const Eigen::Index dim = Eigen::Index(1) << n;
    states_.assign(n + 1, {});
    local_.assign(std::size_t(dim), 0);
    for (Eigen::Index i = 0; i < dim; ++i) {
      auto& sec = states_[std::size_t(std::popcount(std::uint64_t(i)))];
      local_[std::size_t(i)] = Eigen::Index(sec.size());
      sec.push_back(i);
    }
    diag_.assign(n + 1, {});
    hops_.assign(n + 1, {});
    jumps_.assign(n + 1, std::vector<std::vector<std::pair<Eigen::Index, Eigen::Index>>>(n));
    for (std::size_t k = 0; k <= n; ++k) {
      for (const Eigen::Index i : states_[k]) {
        double decay = 0.0;
        std::vector<std::pair<Eigen::Index, cplx>> row;
        for (std::size_t a = 0; a < n; ++a) {
          const Eigen::Index ma = Eigen::Index(1) << a;
          if (i & ma) decay += c.gamma_mat(a, a).real() + c.gamma_ic;
          for (std::size_t b = 0; b < n; ++b) {
            const Eigen::Index mb = Eigen::Index(1) << b;
            if (a == b || !(i & ma) || (i & mb)) continue;
            const cplx coef = kI * c.j(a, b) - c.gamma_mat(a, b);
            if (coef != cplx{0.0, 0.0}) row.emplace_back(local_[std::size_t(i ^ ma ^ mb)], coef);
          }
          if (k < n && !(i & ma)) jumps_[k][a].emplace_back(local_[std::size_t(i)], local_[std::size_t(i | ma)]);
        }
        diag_[k].push_back(-decay);
        hops_[k].push_back(std::move(row));
      }
    }
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        cplx g = c.gamma_mat(a, b);
        if (a == b) g += c.gamma_ic;
        if (g != cplx{0.0, 0.0}) jump_terms_.push_back({a, b, 2.0 * g});
      }
    }
  }

  State reduce(const DensityMatrix& rho) const {
    State s;
    for (std::size_t k = 0; k <= n_; ++k) {
      s.d.push_back(gather(rho.entries(), k, k));
      if (k < n_) s.u.push_back(gather(rho.entries(), k, k + 1));
    }
    return s;
  }

  State zero_like(const State& s) const {
    State z = s;
    for (auto& m : z.d) m.setZero();
    for (auto& m : z.u) m.setZero();
    return z;
  }

  void rhs(const State& s, double, State& out) {
    for (std::size_t k = 0; k <= n_; ++k) {
      apply_left(k, s.d[k], work_);
      out.d[k] = work_ + work_.adjoint();
      if (k < n_) add_jumps(s.d[k + 1], k, k, out.d[k]);
    }
    for (std::size_t k = 0; k < n_; ++k) {
      apply_left(k, s.u[k], out.u[k]);
      adj_ = s.u[k].adjoint();
      apply_left(k + 1, adj_, work_);
      out.u[k] += work_.adjoint();
      if (k + 1 < n_) add_jumps(s.u[k + 1], k, k + 1, out.u[k]);
    }
  }

  static void stage(State& dst, const State& base, double h, const State& k) {
    for (std::size_t i = 0; i < base.d.size(); ++i) dst.d[i] = base.d[i] + h * k.d[i];
    for (std::size_t i = 0; i < base.u.size(); ++i) dst.u[i] = base.u[i] + h * k.u[i];
  }
  static void advance(State& s, double h, const State& k1, const State& k2, const State& k3,
                      const State& k4) {
    const double w = h / 6.0;
    for (std::size_t i = 0; i < s.d.size(); ++i) {
      s.d[i] += w * (k1.d[i] + 2.0 * k2.d[i] + 2.0 * k3.d[i] + k4.d[i]);
    }
    for (std::size_t i = 0; i < s.u.size(); ++i) {
      s.u[i] += w * (k1.u[i] + 2.0 * k2.u[i] + 2.0 * k3.u[i] + k4.u[i]);
    }
  }

  void observe(const State& s, std::vector<cplx>& sp, std::vector<double>& p) const {
    std::fill(sp.begin(), sp.end(), cplx{0.0, 0.0});
    std::fill(p.begin(), p.end(), 0.0);
    for (std::size_t k = 0; k <= n_; ++k) {
      for (const Eigen::Index g : states_[k]) {
        const Eigen::Index li = local_[std::size_t(g)];
        for (std::size_t x = 0; x < n_; ++x) {
          const Eigen::Index m = Eigen::Index(1) << x;
          if (!(g & m)) continue;
          p[x] += s.d[k](li, li).real();
          // ρ(g^m, g) sits in the block one excitation down.
          sp[x] += s.u[k - 1](local_[std::size_t(g ^ m)], li);
        }
      }
    }
  }
  static cplx trace(const State& s) {
    cplx t{0.0, 0.0};
    for (const auto& m : s.d) t += m.trace();
    return t;
  }
  static double hermiticity_error(const State& s) {
    double e = 0.0;
    for (const auto& m : s.d) e = std::max(e, (m - m.adjoint()).cwiseAbs().maxCoeff());
    return e;
  }
  static void hermitize(State& s) {
    for (auto& m : s.d) {
      RowMatrix h = 0.5 * (m + m.adjoint());
      m.swap(h);
    }
  }

 private:
  RowMatrix gather(const RowMatrix& rho, std::size_t kr, std::size_t kc) const {
    RowMatrix out(Eigen::Index(states_[kr].size()), Eigen::Index(states_[kc].size()));
    for (std::size_t i = 0; i < states_[kr].size(); ++i) {
      for (std::size_t j = 0; j < states_[kc].size(); ++j) {
        out(Eigen::Index(i), Eigen::Index(j)) = rho(states_[kr][i], states_[kc][j]);
      }
    }
    return out;
  }

  // out = A_k r with A = −i H_eff restricted to excitation number k.
  void apply_left(std::size_t k, const RowMatrix& r, RowMatrix& out) const {
    out.resize(r.rows(), r.cols());
    for (Eigen::Index i = 0; i < r.rows(); ++i) {
      out.row(i) = diag_[k][std::size_t(i)] * r.row(i);
      for (const auto& [src, coef] : hops_[k][std::size_t(i)]) out.row(i) += coef * r.row(src);
    }
  }

  // out += Σ 2Γ̃_ab σ⁻_b src σ⁺_a, with src the block one excitation up on both sides.
  void add_jumps(const RowMatrix& src, std::size_t kr, std::size_t kc, RowMatrix& out) const {
    for (const auto& t : jump_terms_) {
      for (const auto& [i, si] : jumps_[kr][t.b]) {
        for (const auto& [j, sj] : jumps_[kc][t.a]) out(i, j) += t.g2 * src(si, sj);
      }
    }
  }

  struct JumpTerm {
    std::size_t a;
    std::size_t b;
    cplx g2;
  };

  std::size_t n_;
  std::vector<std::vector<Eigen::Index>> states_;
  std::vector<Eigen::Index> local_;
  std::vector<std::vector<double>> diag_;
  std::vector<std::vector<std::vector<std::pair<Eigen::Index, cplx>>>> hops_;
  // jumps_[k][b]: (state in k with bit b clear, same state with b set in k+1), local indices.
  std::vector<std::vector<std::vector<std::pair<Eigen::Index, Eigen::Index>>>> jumps_;
  std::vector<JumpTerm> jump_terms_;
  RowMatrix work_;
  RowMatrix adj_;
};

template <class Model>
void record(Model& model, const typename Model::State& s, std::size_t n, double t,
            ManyBodyTrajectory& traj) {
  std::vector<cplx> sp(n);
  std::vector<double> p(n);
  model.observe(s, sp, p);
  traj.times.push_back(t);
  traj.sigma_plus.push_back(std::move(sp));
  traj.population.push_back(std::move(p));
  const cplx tr = model.trace(s);
  const double terr = std::abs(tr - 1.0);
  traj.max_trace_error = std::max(traj.max_trace_error, terr);
  if (terr > 1e-6) {
    throw IntegrationFailure("trace drifted to " + format_double(tr.real()) +
                             " at t = " + format_double(t));
  }
}

template <class Model>
ManyBodyTrajectory run_rk4(Model& model, typename Model::State rho, std::size_t n,
                           const std::vector<double>& times, double dt,
                           std::size_t hermitize_every,
                           typename Model::State* final_state = nullptr) {
  auto stage = model.zero_like(rho);
  auto k1 = stage, k2 = stage, k3 = stage, k4 = stage;

  ManyBodyTrajectory traj;
  traj.dt_used = dt;
  record(model, rho, n, times.front(), traj);
  std::size_t steps_done = 0;
  for (std::size_t k = 1; k < times.size(); ++k) {
    const double t0 = times[k - 1];
    const double span = times[k] - t0;
    const auto steps = std::max<std::size_t>(1, std::size_t(std::ceil(span / dt - 1e-9)));
    const double h = span / double(steps);
    for (std::size_t s = 0; s < steps; ++s) {
      const double t = t0 + double(s) * h;
      model.rhs(rho, t, k1);
      Model::stage(stage, rho, 0.5 * h, k1);
      model.rhs(stage, t + 0.5 * h, k2);
      Model::stage(stage, rho, 0.5 * h, k2);
      model.rhs(stage, t + 0.5 * h, k3);
      Model::stage(stage, rho, h, k3);
      model.rhs(stage, t + h, k4);
      Model::advance(rho, h, k1, k2, k3, k4);
      if (hermitize_every && ++steps_done % hermitize_every == 0) {
        traj.max_hermiticity_error =
            std::max(traj.max_hermiticity_error, Model::hermiticity_error(rho));
        Model::hermitize(rho);
      }
    }
    record(model, rho, n, times[k], traj);
  }
  traj.max_hermiticity_error = std::max(traj.max_hermiticity_error, Model::hermiticity_error(rho));
  if (final_state) *final_state = std::move(rho);
  return traj;
}

double observable_gap(const ManyBodyTrajectory& a, const ManyBodyTrajectory& b) {
  double gap = 0.0;
  for (std::size_t k = 0; k < a.times.size(); ++k) {
    for (std::size_t x = 0; x < a.nuclei(); ++x) {
      gap = std::max(gap, std::abs(a.population[k][x] - b.population[k][x]));
      gap = std::max(gap, std::abs(a.sigma_plus[k][x] - b.sigma_plus[k][x]));
    }
  }
  return gap;
}

}  // namespace

ManyBodyTrajectory evolve(const DensityMatrix& rho0, const CouplingSet& couplings,
                          const std::optional<Drive>& drive, const TimeGrid& grid,
                          const ManyBodyOptions& opts) {
  grid.validate();
  if (!(opts.dt > 0.0)) throw ConfigError("dt must be > 0");
  if (couplings.size() != rho0.nuclei()) throw ConfigError("coupling size does not match N");
  if (drive) {
    validate_pulse(drive->pulse);
    if (is_impulsive(drive->pulse)) {
      throw UnsupportedOperation("impulsive pulses enter through prepare_impulsive, not as a drive");
    }
    if (drive->phase_in.size() != rho0.nuclei()) throw ConfigError("drive phases must have length N");
  }
  if (std::abs(rho0.trace() - 1.0) > 1e-10) throw ConfigError("initial state must have unit trace");

  const std::size_t n = rho0.nuclei();
  const bool reduced = opts.block_reduction && !drive;
  std::optional<SectorModel> sector;
  if (reduced) sector.emplace(couplings, n);
  FullModel full(couplings, drive);
  const auto run = [&](const std::vector<double>& times, double step, DensityMatrix* last) {
    if (reduced) return run_rk4(*sector, sector->reduce(rho0), n, times, step, opts.hermitize_every);
    return run_rk4(full, rho0, n, times, step, opts.hermitize_every, last);
  };

  double dt = opts.dt;
  if (opts.step_check) {
    // Probe samples no finer than dt so the output grid does not cap the step.
    const double probe_end = std::min(grid.stop, grid.start + std::max(opts.probe_window, 4.0 * dt));
    const auto spans = std::clamp<std::size_t>(std::size_t((probe_end - grid.start) / dt), 1, 10);
    const TimeGrid probe{grid.start, probe_end, spans + 1};
    std::size_t halvings = 0;
    for (;;) {
      const auto coarse = run(probe.times(), dt, nullptr);
      const auto fine = run(probe.times(), 0.5 * dt, nullptr);
      if (observable_gap(coarse, fine) < opts.tol) break;
      if (++halvings > opts.max_halvings) {
        throw IntegrationFailure("RK4 step did not converge after " + std::to_string(halvings - 1) +
                                 " halvings");
      }
      dt *= 0.5;
    }
  }
  DensityMatrix last = rho0;
  auto traj = run(grid.times(), dt, &last);
  if (!reduced) traj.final_state = std::move(last);
  return traj;
}

void write_manybody_csv(const std::string& path, const ManyBodyTrajectory& traj) {
  const std::size_t n = traj.nuclei();
  std::vector<std::string> header{"t"};
  for (std::size_t k = 0; k < n; ++k) header.push_back("p_" + std::to_string(k));
  for (std::size_t k = 0; k < n; ++k) {
    header.push_back("re_s_" + std::to_string(k));
    header.push_back("im_s_" + std::to_string(k));
  }
  CsvTable table(header);
  std::vector<double> row(1 + 3 * n);
  for (std::size_t t = 0; t < traj.times.size(); ++t) {
    row[0] = traj.times[t];
    for (std::size_t k = 0; k < n; ++k) {
      row[1 + k] = traj.population[t][k];
      row[1 + n + 2 * k] = traj.sigma_plus[t][k].real();
      row[2 + n + 2 * k] = traj.sigma_plus[t][k].imag();
    }
    table.add_row(row);
  }
  table.save(path);
}

}  // namespace ler
