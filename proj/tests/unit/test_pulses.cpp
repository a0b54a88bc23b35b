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

#include "ler/errors.hpp"
#include "ler/pulses.hpp"

using namespace ler;

TEST_CASE("pointwise envelopes") {
  const Pulse e = ExpDecay{0.3, 2.5, 1.7};
  CHECK(std::abs(evaluate(e, 0.0) - cplx{2.0 * 2.5 * 0.3, 0.0}) < 1e-15);
  CHECK(evaluate(e, -0.1) == cplx{0.0, 0.0});
  const double t = 0.8;
  CHECK(std::abs(std::abs(evaluate(e, t)) - 1.5 * std::exp(-2.5 * t)) < 1e-15);
  const cplx expect = 1.5 * std::exp(-2.5 * t) * std::polar(1.0, -1.7 * t);
  CHECK(std::abs(evaluate(e, t) - expect) < 1e-15);

  const Pulse c = Constant{2.0, 3.0};
  for (double s : {-1.0, 0.0, 4.2}) {
    CHECK(std::abs(evaluate(c, s) - 2.0 * std::polar(1.0, -3.0 * s)) < 1e-15);
  }
  CHECK_THROWS_AS(evaluate(Pulse{Impulsive{0.1, 0.0}}, 0.0), UnsupportedOperation);
}

TEST_CASE("sampled envelopes interpolate linearly") {
  Sampled s;
  s.t = {0.0, 1.0, 2.0};
  s.omega = {cplx{0.0, 0.0}, cplx{2.0, -2.0}, cplx{0.0, 0.0}};
  const Pulse p = s;
  CHECK(std::abs(evaluate(p, 0.5) - cplx{1.0, -1.0}) < 1e-15);
  CHECK(evaluate(p, 2.5) == cplx{0.0, 0.0});
  CHECK(evaluate(p, -0.5) == cplx{0.0, 0.0});
  // Triangle of height 2√2 over [0, 2]: area ½·½·2·2√2.
  CHECK(pulse_area(p, 2.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(pulse_area(p, 1.0) == doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-14));
  CHECK(pulse_area(p, 5.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("pulse area functional") {
  CHECK(pulse_area(Pulse{ExpDecay{0.4, 2.5, 0.0}}, 1e3) == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(pulse_area(Pulse{ExpDecay{0.4, 2.5, 3.0}}, 0.0) == 0.0);
  CHECK(pulse_area(Pulse{Constant{3.0, 1.0}}, 2.0) == doctest::Approx(3.0));
  CHECK(pulse_area(Pulse{Impulsive{0.7, 1.0}}, 0.0) == 0.7);
  CHECK(pulse_area(Pulse{Impulsive{0.7, 1.0}}, 9.0) == 0.7);
}

TEST_CASE("pulse area is non-decreasing") {
  Sampled s;
  for (int k = 0; k <= 40; ++k) {
    s.t.push_back(0.1 * k);
    s.omega.push_back(std::polar(std::sin(0.3 * k) + 1.2, 0.5 * k));
  }
  for (const Pulse& p : {Pulse{ExpDecay{1.0, 2.5, 1.0}}, Pulse{Constant{1.0, -2.0}}, Pulse{s}}) {
    double prev = 0.0;
    for (int k = 0; k <= 100; ++k) {
      const double a = pulse_area(p, 0.05 * k);
      CHECK(a >= prev);
      prev = a;
    }
  }
}

TEST_CASE("impulsive state preparation") {
  auto s = impulsive_state(0.0, 0.3);
  CHECK(s.rho_ee == 0.0);
  CHECK(std::abs(s.rho_ge) == 0.0);
  s = impulsive_state(kPi / 2.0, 0.0);
  CHECK(s.rho_ee == doctest::Approx(1.0));
  CHECK(std::abs(s.rho_ge) < 1e-15);
  s = impulsive_state(kPi / 4.0, 0.0);
  CHECK(s.rho_ee == doctest::Approx(0.5));
  CHECK(std::abs(s.rho_ge - cplx{0.0, -0.5}) < 1e-15);
  s = impulsive_state(0.3, 1.1);
  CHECK(std::abs(s.rho_ge - cplx{0.0, -0.5} * std::sin(0.6) * std::polar(1.0, 1.1)) < 1e-15);
}

TEST_CASE("impulsive states are pure and obey the low-area bound") {
  for (int k = 0; k <= 200; ++k) {
    const double a = 0.01 * k;
    const auto s = impulsive_state(a, 0.37 * k);
    CHECK(std::abs(s.rho_ee * (1.0 - s.rho_ee) - std::norm(s.rho_ge)) < 1e-15);
    if (a <= 0.05) CHECK(std::abs(s.rho_ee - std::norm(s.rho_ge)) <= std::pow(a, 4) + 1e-18);
  }
}

TEST_CASE("pulse validation") {
  CHECK_THROWS_AS(validate_pulse(Pulse{ExpDecay{-0.1, 2.5, 0.0}}), ConfigError);
  CHECK_THROWS_AS(validate_pulse(Pulse{ExpDecay{0.1, 0.0, 0.0}}), ConfigError);
  CHECK_THROWS_AS(validate_pulse(Pulse{Impulsive{-1.0, 0.0}}), ConfigError);
  Sampled bad;
  bad.t = {0.0, 0.0};
  bad.omega = {1.0, 1.0};
  CHECK_THROWS_AS(validate_pulse(Pulse{bad}), ConfigError);
  CHECK_THROWS_AS(load_sampled("/nonexistent/samples.csv"), ConfigError);
}
