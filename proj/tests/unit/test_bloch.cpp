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

#include <doctest.h>

#include <cmath>
#include <fstream>
#include <random>

#include "ler/bloch.hpp"
#include "ler/errors.hpp"
#include "ler/quadrature.hpp"

using namespace ler;

TEST_CASE("free decay from an arbitrary start") {
  const TimeGrid grid{0.0, 6.0, 301};
  const TwoLevelState s0{0.3, cplx{0.2, -0.25}};
  const auto traj = integrate_bloch(Pulse{Constant{0.0, 0.0}}, 1.0, grid, {}, s0);
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const double t = traj.times[k];
    CHECK(std::abs(traj.states[k].rho_ee - 0.3 * std::exp(-t)) < 1e-11);
    CHECK(std::abs(traj.states[k].rho_ge - s0.rho_ge * std::exp(-0.5 * t)) < 1e-11);
  }
  CHECK(traj.times.back() == 6.0);
}

TEST_CASE("resonant undamped Rabi flopping") {
  const double w = 3.0;
  const TimeGrid grid{0.0, 10.0, 501};
  const auto traj = integrate_bloch(Pulse{Constant{w, 0.0}}, 0.0, grid);
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const double s = std::sin(0.5 * w * traj.times[k]);
    CHECK(std::abs(traj.states[k].rho_ee - s * s) < 1e-8);
  }
}

TEST_CASE("detuned Rabi solution including the coherence phase") {
  const Constant d{2.0, 1.3};
  const TimeGrid grid{0.0, 8.0, 401};
  const auto traj = integrate_bloch(Pulse{d}, 0.0, grid);
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const auto exact = rabi_solution(d, traj.times[k]);
    CHECK(std::abs(traj.states[k].rho_ee - exact.rho_ee) < 1e-8);
    CHECK(std::abs(traj.states[k].rho_ge - exact.rho_ge) < 1e-8);
  }
}

TEST_CASE("impulsive decay keeps the ratio fixed") {
  std::vector<double> times;
  for (int k = 0; k <= 80; ++k) times.push_back(0.1 * k);
  const auto traj = impulsive_decay(0.2 * kPi, 0.4, 1.0, times);
  const double c2 = std::pow(std::cos(0.2 * kPi), 2);
  CHECK(c2 == doctest::Approx(0.6545084971874737).epsilon(1e-15));
  for (const auto& s : traj.states) {
    CHECK(std::abs(std::norm(s.rho_ge) / s.rho_ee - c2) < 1e-13);
  }
  const auto inv = impulsive_decay(kPi / 2.0, 0.0, 1.0, times);
  for (const auto& s : inv.states) CHECK(std::norm(s.rho_ge) / s.rho_ee < 1e-30);
}

TEST_CASE("integrate_bloch with an impulsive pulse matches the closed form") {
  const TimeGrid grid{0.0, 5.0, 101};
  const auto num = integrate_bloch(Pulse{Impulsive{0.3, 0.7}}, 1.0, grid);
  const auto ref = impulsive_decay(0.3, 0.7, 1.0, grid.times());
  for (std::size_t k = 0; k < grid.samples; ++k) {
    CHECK(std::abs(num.states[k].rho_ee - ref.states[k].rho_ee) < 1e-11);
    CHECK(std::abs(num.states[k].rho_ge - ref.states[k].rho_ge) < 1e-11);
  }
}

TEST_CASE("first-order coherence: closed forms against quadrature") {
  const double gamma = 1.0;
  for (const Pulse& p : {Pulse{ExpDecay{0.05, 2.5, 0.0}}, Pulse{ExpDecay{0.05, 2.5, -3.0}},
                         Pulse{ExpDecay{0.05, 0.5, 0.0}}, Pulse{Constant{0.2, 1.5}}}) {
    for (double t : {0.3, 1.0, 4.0}) {
      auto f = [&](double tau) {
        return -0.5 * kI * std::exp(-0.5 * gamma * (t - tau)) * std::conj(evaluate(p, tau));
      };
      const cplx ref = adaptive_simpson(f, 0.0, t, 1e-13);
      CHECK(std::abs(perturbative_coherence_1(p, gamma, t) - ref) < 1e-11);
    }
  }
  CHECK(perturbative_coherence_1(Pulse{Constant{0.0, 1.0}}, gamma, 2.0) == cplx{0.0, 0.0});
  CHECK(perturbative_population_2(Pulse{ExpDecay{0.0, 2.5, 0.0}}, gamma, 2.0) == 0.0);
}

TEST_CASE("sampled pulses go through adaptive quadrature") {
  const ExpDecay e{0.05, 2.5, 1.0};
  Sampled s;
  for (int k = 0; k <= 4000; ++k) {
    s.t.push_back(0.001 * k);
    s.omega.push_back(evaluate(Pulse{e}, 0.001 * k));
  }
  const double t = 3.0;
  const cplx closed = perturbative_coherence_1(Pulse{e}, 1.0, t);
  const cplx sampled = perturbative_coherence_1(Pulse{s}, 1.0, t);
  // Linear interpolation error of the envelope, O(h²).
  CHECK(std::abs(sampled - closed) < 1e-6 * std::abs(closed));
}

TEST_CASE("undamped constant drive expansions") {
  const Constant d{0.01, 1.7};
  for (double t : {0.0, 0.4, 2.0, 7.5}) {
    const cplx r1 = perturbative_coherence_1(Pulse{d}, 0.0, t);
    CHECK(std::abs(r1 + d.amplitude / (2.0 * d.detuning) * (std::polar(1.0, d.detuning * t) - 1.0)) < 1e-15);
    CHECK(std::norm(r1) == doctest::Approx(coherence_squared_2(d, t)).epsilon(1e-12));
    const auto exact = rabi_solution(d, t);
    const cplx r3 = perturbative_coherence_3(d, t);
    // Remainder is fifth order, with secular growth in t.
    CHECK(std::abs(exact.rho_ge - r1 - r3) < std::pow(d.amplitude, 5) * (1.0 + t * t));
    const double x4 = std::norm(exact.rho_ge) - coherence_squared_2(d, t);
    CHECK(std::abs(x4 - coherence_squared_4(d, t)) < 1e-3 * std::pow(d.amplitude, 4) + 1e-18);
    const double p4 = exact.rho_ee - coherence_squared_2(d, t);
    CHECK(std::abs(p4 - perturbative_population_4(d, t)) < 1e-3 * std::pow(d.amplitude, 4) + 1e-18);
  }
  CHECK(coherence_squared_4(d, 0.0) == doctest::Approx(0.0));
  CHECK(coherence_squared_2(d, 0.0) == 0.0);
  CHECK_THROWS_AS(coherence_squared_4(Constant{0.1, 0.0}, 1.0), DomainError);
  CHECK_THROWS_AS(perturbative_coherence_3(Constant{0.1, 0.0}, 1.0), DomainError);
}

TEST_CASE("fourth-order coherence squared minus population is minus the squared population") {
  const Constant d{0.3, -2.2};
  for (double t : {0.1, 1.3, 5.0}) {
    const double p2 = coherence_squared_2(d, t);
    CHECK(coherence_squared_4(d, t) - perturbative_population_4(d, t) == doctest::Approx(-p2 * p2));
  }
}

TEST_CASE("positivity is preserved along integrated trajectories") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 10; ++k) {
    const ExpDecay e{2.0 * kPi * u(rng), 0.5 + 5.0 * u(rng), -10.0 + 20.0 * u(rng)};
    const auto traj = integrate_bloch(Pulse{e}, 1.0, TimeGrid{0.0, 8.0, 801});
    for (const auto& s : traj.states) {
      CHECK(std::norm(s.rho_ge) <= s.rho_ee * (1.0 - s.rho_ee) + 1e-9);
      CHECK(s.rho_ee >= -1e-9);
      CHECK(s.rho_ee <= 1.0 + 1e-9);
    }
  }
}

TEST_CASE("step budget exhaustion reports stiffness") {
  OdeOptions o;
  o.max_steps = 5;
  CHECK_THROWS_AS(integrate_bloch(Pulse{Constant{50.0, 0.0}}, 1.0, TimeGrid{0.0, 8.0, 11}, o),
                  StiffnessError);
}

TEST_CASE("invalid inputs") {
  CHECK_THROWS_AS(integrate_bloch(Pulse{Constant{1.0, 0.0}}, -1.0, TimeGrid{}), ConfigError);
  OdeOptions o;
  o.rtol = 0.0;
  CHECK_THROWS_AS(integrate_bloch(Pulse{Constant{1.0, 0.0}}, 1.0, TimeGrid{}, o), ConfigError);
  CHECK_THROWS_AS(integrate_bloch(Pulse{Constant{1.0, 0.0}}, 1.0, TimeGrid{0.0, 1.0, 1}),
                  ConfigError);
}

TEST_CASE("trajectory CSV layout") {
  const auto traj = impulsive_decay(0.3, 0.0, 1.0, {0.0, 0.5});
  const std::string path = "bloch_test_out.csv";
  write_bloch_csv(path, traj);
  std::ifstream in(path);
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  CHECK(header == "t,rho_ee,re_rho_ge,im_rho_ge,coh_sq");
  CHECK(row.rfind("0,", 0) == 0);
}
