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

#include "ler/bloch.hpp"
#include "ler/errors.hpp"
#include "ler/manybody.hpp"
#include "ler/observables.hpp"

using namespace ler;

TEST_CASE("single nucleus after an impulsive excitation") {
  for (double a : {0.05 * kPi, 0.2 * kPi, 0.45 * kPi}) {
    const auto s = intensities(impulsive_decay(a, 0.3, 1.0, TimeGrid{0.0, 8.0, 201}.times()));
    for (const auto& r : s.ratio) {
      REQUIRE(r.has_value());
      CHECK(std::abs(*r - std::pow(std::cos(a), 2)) < 1e-12);
    }
  }
}

TEST_CASE("phase-matched product state interferes fully") {
  const auto g = EnsembleGeometry::chain(8, 286.0, true, 2.0 * kPi / 8.0);
  const auto p = PhysicalParams::from_alpha(8.56, 1.0, 86.0, 286.0);
  const double a = 0.2 * kPi;
  const auto traj = evolve(prepare_impulsive(g, a), chain_couplings(p, g, 1.0), std::nullopt,
                           TimeGrid{0.0, 0.01, 2});
  const auto s = intensities(traj, g);
  const double single = std::pow(0.5 * std::sin(2.0 * a), 2);
  CHECK(s.i_coh[0] == doctest::Approx(64.0 * single).epsilon(1e-12));
  CHECK(s.i_inc[0] == doctest::Approx(8.0 * std::pow(std::sin(a), 2)).epsilon(1e-12));
  CHECK(*s.ratio[0] == doctest::Approx(std::pow(std::cos(a), 2)).epsilon(1e-12));

  auto mismatched = g;
  for (std::size_t n = 0; n < 8; ++n) mismatched.phase_out[n] = g.phase_in[n] + 2.0 * kPi * n / 8.0;
  const auto m = intensities(traj, mismatched);
  CHECK(m.i_coh[0] < 1e-28);
  CHECK(m.i_inc[0] > 0.1);
}

TEST_CASE("ratio is missing below the population floor") {
  ManyBodyTrajectory t;
  t.times = {0.0, 1.0};
  t.population = {{0.0}, {1e-6}};
  t.sigma_plus = {{cplx{0.0, 0.0}}, {cplx{1e-3, 0.0}}};
  const auto s = intensities(t, EnsembleGeometry::chain(1, 1.0, false, 0.0));
  CHECK_FALSE(s.ratio[0].has_value());
  REQUIRE(s.ratio[1].has_value());
  CHECK(*s.ratio[1] == doctest::Approx(1.0));
  write_observables_csv("observables_test_out.csv", s);
  std::ifstream in("observables_test_out.csv");
  std::string header, row0;
  std::getline(in, header);
  std::getline(in, row0);
  CHECK(header == "t,i_coh,i_inc,ratio");
  CHECK(row0 == "0,0,0,nan");
}

TEST_CASE("peak location") {
  std::vector<double> t, v;
  for (int k = 0; k <= 20; ++k) {
    t.push_back(0.5 * k);
    v.push_back(10.0 - std::abs(k - 7));
  }
  CHECK(first_peak_time(t, v) == doctest::Approx(3.5).epsilon(1e-15));
  // Smooth parabola off-grid.
  std::vector<double> p;
  for (double x : t) p.push_back(-(x - 2.3) * (x - 2.3));
  CHECK(first_peak_time(t, p) == doctest::Approx(2.3).epsilon(1e-13));
  // First peak wins over a higher later one.
  std::vector<double> two{0, 1, 0, 5, 0};
  CHECK(first_peak_time({0, 1, 2, 3, 4}, two) == doctest::Approx(1.0));
  CHECK_THROWS_AS(first_peak_time({0, 1, 2, 3}, {0, 1, 2, 3}), NoPeakError);
  CHECK_THROWS_AS(first_peak_time({0, 1, 2, 3}, {3, 2, 1, 0}), NoPeakError);
}

TEST_CASE("peak analysis is scale invariant") {
  const auto traj = integrate_bloch(Pulse{ExpDecay{0.2 * kPi, 2.5, 0.0}}, 1.0, TimeGrid{});
  const auto base = peak_analysis(traj.times, traj.coherence_squared(), traj.populations());
  auto c = traj.coherence_squared();
  auto p = traj.populations();
  for (auto& x : c) x *= 37.5;
  for (auto& x : p) x *= 0.01;
  const auto scaled = peak_analysis(traj.times, c, p);
  CHECK(scaled.t_coh_max == doctest::Approx(base.t_coh_max).epsilon(1e-12));
  CHECK(scaled.peak_deviation == doctest::Approx(base.peak_deviation).epsilon(1e-10));
  CHECK(base.peak_deviation > 0.0);
  const std::string j = peak_report_json(base);
  CHECK(j.find("\"peak_deviation\"") != std::string::npos);
}

TEST_CASE("dominant frequency") {
  const double w = 7.0;
  std::vector<double> t, v, d;
  for (int k = 0; k <= 2000; ++k) {
    t.push_back(0.004 * k);
    v.push_back(std::pow(std::sin(0.5 * w * t.back()), 2));
    d.push_back(std::exp(-t.back()));
  }
  const auto est = dominant_frequency(t, v, 0.0, 8.0);
  CHECK_FALSE(est.low_confidence);
  CHECK(std::abs(est.omega - w) <= est.bin_width);
  const auto decay = dominant_frequency(t, d, 0.0, 8.0);
  CHECK(decay.low_confidence);
  const auto short_window = dominant_frequency(t, v, 0.0, 1.0);
  CHECK(short_window.low_confidence);
  std::vector<double> bad_t = t;
  bad_t[5] += 1e-3;
  CHECK_THROWS_AS(dominant_frequency(bad_t, v, 0.0, 8.0), GridError);
}
