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

#include "ler/bloch.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ler/csv.hpp"
#include "ler/errors.hpp"
#include "ler/quadrature.hpp"

namespace ler {

std::vector<double> BlochTrajectory::populations() const {
  std::vector<double> out(states.size());
  std::transform(states.begin(), states.end(), out.begin(),
                 [](const TwoLevelState& s) { return s.rho_ee; });
  return out;
}

std::vector<double> BlochTrajectory::coherence_squared() const {
  std::vector<double> out(states.size());
  std::transform(states.begin(), states.end(), out.begin(),
                 [](const TwoLevelState& s) { return std::norm(s.rho_ge); });
  return out;
}

BlochTrajectory integrate_bloch(const Pulse& pulse, double gamma, const TimeGrid& grid,
                                const OdeOptions& opts, std::optional<TwoLevelState> initial) {
  validate_pulse(pulse);
  grid.validate();
  if (!(gamma >= 0.0)) throw ConfigError("gamma must be >= 0");
  if (!(opts.rtol > 0.0) || !(opts.atol > 0.0)) throw ConfigError("tolerances must be > 0");

  const bool impulsive = is_impulsive(pulse);
  TwoLevelState s0;
  if (initial) {
    s0 = *initial;
  } else if (impulsive) {
    const auto& p = std::get<Impulsive>(pulse);
    s0 = impulsive_state(p.area, p.phase);
  }

  OdeRhs rhs = [&](double t, const Eigen::VectorXd& y, Eigen::VectorXd& dy) {
    const cplx omega = impulsive ? cplx{0.0, 0.0} : evaluate(pulse, t);
    const double a = omega.real();
    const double b = omega.imag();
    const double inv = 2.0 * y[0] - 1.0;
    dy[0] = -gamma * y[0] - (a * y[2] + b * y[1]);
    dy[1] = -0.5 * gamma * y[1] + 0.5 * b * inv;
    dy[2] = -0.5 * gamma * y[2] + 0.5 * a * inv;
  };

  const double slack = 10.0 * std::max(opts.rtol, opts.atol);
  StepHook hook = [slack](double t, const Eigen::VectorXd& y) {
    const double coh = y[1] * y[1] + y[2] * y[2];
    if (y[0] < -slack || y[0] > 1.0 + slack || coh > y[0] * (1.0 - y[0]) + slack) {
      throw SolverFailure("Bloch state left the physical region at t = " + std::to_string(t));
    }
  };

  Eigen::VectorXd y0(3);
  y0 << s0.rho_ee, s0.rho_ge.real(), s0.rho_ge.imag();
  BlochTrajectory traj;
  traj.times = grid.times();
  const auto ys = integrate_dopri5(rhs, y0, grid.start, traj.times, opts, hook);
  traj.states.reserve(ys.size());
  for (const auto& y : ys) {
    traj.states.push_back({y[0], cplx{y[1], y[2]}});
  }
  return traj;
}

BlochTrajectory impulsive_decay(double area, double phase, double gamma,
                                const std::vector<double>& times) {
  const TwoLevelState s0 = impulsive_state(area, phase);
  BlochTrajectory traj;
  traj.times = times;
  traj.states.reserve(times.size());
  for (double t : times) {
    traj.states.push_back({s0.rho_ee * std::exp(-gamma * t), s0.rho_ge * std::exp(-0.5 * gamma * t)});
  }
  return traj;
}

cplx perturbative_coherence_1(const Pulse& pulse, double gamma, double t) {
  validate_pulse(pulse);
  if (const auto* p = std::get_if<Impulsive>(&pulse)) {
    if (t < 0.0) return {0.0, 0.0};
    return -kI * std::polar(1.0, p->phase) * p->area * std::exp(-0.5 * gamma * t);
  }
  if (const auto* p = std::get_if<ExpDecay>(&pulse)) {
    if (t <= 0.0) return {0.0, 0.0};
    const cplx b{0.5 * gamma - p->decay_rate, p->detuning};
    return -kI * p->decay_rate * p->area * std::exp(-0.5 * gamma * t) * t * exprel(b * t);
  }
  if (const auto* p = std::get_if<Constant>(&pulse)) {
    if (t <= 0.0) return {0.0, 0.0};
    const cplx b{0.5 * gamma, p->detuning};
    return -0.5 * kI * p->amplitude * std::exp(-0.5 * gamma * t) * t * exprel(b * t);
  }
  const auto& s = std::get<Sampled>(pulse);
  const double a = s.t.front();
  if (t <= a) return {0.0, 0.0};
  const double hi = std::min(t, s.t.back());
  auto integrand = [&](double tau) {
    return -0.5 * kI * std::exp(-0.5 * gamma * (t - tau)) * std::conj(evaluate(pulse, tau));
  };
  // Split at the sample nodes so the piecewise-linear kinks sit on panel edges.
  cplx acc{0.0, 0.0};
  for (std::size_t k = 1; k < s.t.size() && s.t[k - 1] < hi; ++k) {
    acc += adaptive_simpson(integrand, s.t[k - 1], std::min(s.t[k], hi), 1e-10 / double(s.t.size()));
  }
  return acc;
}

double perturbative_population_2(const Pulse& pulse, double gamma, double t) {
  return std::norm(perturbative_coherence_1(pulse, gamma, t));
}

namespace {

double checked_detuning(const Constant& drive) {
  if (drive.detuning == 0.0) {
    throw DomainError("undamped constant-drive expansion is singular at zero detuning");
  }
  return drive.detuning;
}

}  // namespace

cplx perturbative_coherence_3(const Constant& drive, double t) {
  const double d = checked_detuning(drive);
  const double w = drive.amplitude;
  const cplx e1 = std::polar(1.0, d * t);
  const cplx e2 = std::polar(1.0, 2.0 * d * t);
  return w * w * w * (cplx{-3.0, -2.0 * d * t} + 4.0 * e1 - e2) / (8.0 * d * d * d);
}

double coherence_squared_2(const Constant& drive, double t) {
  const double d = checked_detuning(drive);
  const double s = std::sin(0.5 * d * t);
  return drive.amplitude * drive.amplitude * s * s / (d * d);
}

double coherence_squared_4(const Constant& drive, double t) {
  const double d = checked_detuning(drive);
  const double w4 = std::pow(drive.amplitude, 4);
  return w4 / std::pow(d, 4) * (-0.875 + std::cos(d * t) - 0.125 * std::cos(2.0 * d * t)) +
         w4 * t * std::sin(d * t) / (4.0 * d * d * d);
}

double perturbative_population_4(const Constant& drive, double t) {
  const double d = checked_detuning(drive);
  const double w4 = std::pow(drive.amplitude, 4);
  const double s = std::sin(0.5 * d * t);
  return w4 * (t * std::sin(d * t) / (4.0 * d * d * d) - s * s / std::pow(d, 4));
}

TwoLevelState rabi_solution(const Constant& drive, double t) {
  const double w = drive.amplitude;
  const double d = drive.detuning;
  const double wd = std::hypot(w, d);
  TwoLevelState s;
  if (wd == 0.0) return s;
  const double sn = std::sin(0.5 * wd * t);
  s.rho_ee = w * w / (wd * wd) * sn * sn;
  // Ground-state start under H = −(Ω σ⁺ + Ω* σ⁻)/2 in the frame co-rotating with the drive.
  const cplx c_e = kI * (w / wd) * sn;
  const cplx c_g = std::cos(0.5 * wd * t) - kI * (d / wd) * sn;
  // Back to the ω₀ frame: c_e picks up e^{−iΔt/2}, c_g picks up e^{+iΔt/2}.
  s.rho_ge = std::conj(c_e * std::polar(1.0, -0.5 * d * t)) * (c_g * std::polar(1.0, 0.5 * d * t));
  return s;
}

void write_bloch_csv(const std::string& path, const BlochTrajectory& traj) {
  CsvTable table({"t", "rho_ee", "re_rho_ge", "im_rho_ge", "coh_sq"});
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const auto& s = traj.states[k];
    table.add_row({traj.times[k], s.rho_ee, s.rho_ge.real(), s.rho_ge.imag(), std::norm(s.rho_ge)});
  }
  table.save(path);
}

}  // namespace ler
