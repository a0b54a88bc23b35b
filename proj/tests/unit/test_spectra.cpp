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
#include "ler/fourier.hpp"
#include "ler/spectra.hpp"

using namespace ler;

namespace {

Spectrum2D synthetic(const std::vector<double>& dets, const TimeGrid& grid,
                     const std::function<double(double, double)>& f) {
  Spectrum2D s;
  s.detunings = dets;
  s.axis = grid.times();
  s.values.resize(Eigen::Index(dets.size()), Eigen::Index(grid.samples));
  s.row_failed.assign(dets.size(), false);
  for (std::size_t r = 0; r < dets.size(); ++r) {
    for (std::size_t c = 0; c < grid.samples; ++c) s.values(Eigen::Index(r), Eigen::Index(c)) = f(dets[r], s.axis[c]);
  }
  return s;
}

}  // namespace

TEST_CASE("DFT against the direct sum") {
  const std::vector<double> x{0.3, -1.0, 2.5, 0.7, -0.2};
  const auto spec = dft_real(x, 8);
  for (std::size_t k = 0; k < 8; ++k) {
    cplx ref{0.0, 0.0};
    for (std::size_t n = 0; n < x.size(); ++n) ref += x[n] * std::polar(1.0, -2.0 * kPi * double(k * n) / 8.0);
    CHECK(std::abs(spec[k] - ref) < 1e-13);
  }
}

TEST_CASE("damped cosine rows peak at plus and minus the detuning") {
  const TimeGrid grid{0.0, 8.0, 2001};
  const auto map = synthetic({-10.0, 0.0, 10.0}, grid,
                             [](double d, double t) { return std::cos(d * t) * std::exp(-0.5 * t); });
  const auto ffc = ffc_transform(map, 4);
  const double dw = ffc.axis[1] - ffc.axis[0];
  CHECK(ffc.axis.size() == 4 * 2001);
  CHECK(dw == doctest::Approx(2.0 * kPi / (4 * 2001 * 0.004)));
  for (Eigen::Index r : {Eigen::Index(0), Eigen::Index(2)}) {
    Eigen::Index best = 0;
    ffc.values.row(r).maxCoeff(&best);
    CHECK(std::abs(std::abs(ffc.axis[std::size_t(best)]) - 10.0) <= dw);
  }
}

TEST_CASE("magnitude spectra of real rows are even in frequency") {
  const TimeGrid grid{0.0, 8.0, 2001};
  const auto map = synthetic({-3.0, 3.0}, grid, [](double d, double t) {
    return std::pow(std::sin(d * t), 2) * std::exp(-t) + 0.1 * std::cos(2.7 * t);
  });
  const auto ffc = ffc_transform(map, 4);
  const std::size_t len = ffc.axis.size();
  // Index j ↔ ω_j; the mirror of j is len − j (j ≥ 1).
  for (std::size_t j = 1; j < len; ++j) {
    CHECK(std::abs(ffc.values(0, Eigen::Index(j)) - ffc.values(0, Eigen::Index(len - j))) < 1e-9);
    CHECK(ffc.axis[j] == doctest::Approx(-ffc.axis[len - j]));
  }
}

TEST_CASE("non-uniform grids are rejected") {
  auto map = synthetic({0.0}, TimeGrid{0.0, 1.0, 11}, [](double, double t) { return t; });
  map.axis[3] += 1e-3;
  CHECK_THROWS_AS(ffc_transform(map), GridError);
}

TEST_CASE("fourth-order oracle: only the quartic term carries twice the detuning") {
  const Constant d{0.5, 2.0};
  const double period = 2.0 * kPi / d.detuning;
  const int m = 4096;
  const double h = period / m;
  cplx c4{0.0, 0.0}, c2{0.0, 0.0};
  for (int k = 0; k < m; ++k) {
    const double t = k * h;
    // The secular t·sin(Δt) part is not periodic and is removed before projecting.
    const double osc4 = coherence_squared_4(d, t) - std::pow(d.amplitude, 4) * t * std::sin(d.detuning * t) /
                                                        (4.0 * std::pow(d.detuning, 3));
    const cplx phase = std::polar(1.0, -2.0 * d.detuning * t);
    c4 += osc4 * phase / double(m);
    c2 += coherence_squared_2(d, t) * phase / double(m);
  }
  const double expect = std::pow(d.amplitude, 4) / (16.0 * std::pow(d.detuning, 4));
  CHECK(std::abs(c4 + expect) < 1e-12);
  CHECK(std::abs(c2) < 1e-14);
}

TEST_CASE("low-area scan: coherence squared tracks population") {
  const auto dets = linspace(-15.0, 15.0, 31);
  const auto scan = detuning_scan(ExpDecay{0.01 * kPi, 2.5, 0.0}, 1.0, dets, TimeGrid{}, {}, 2);
  const double sup = scan.pop.values.cwiseAbs().maxCoeff();
  CHECK((scan.coh_sq.values - scan.pop.values).cwiseAbs().maxCoeff() < 0.01 * sup);
  for (bool f : scan.pop.row_failed) CHECK_FALSE(f);
  CHECK_THROWS_AS(detuning_scan(ExpDecay{0.1, 2.5, 0.0}, 1.0, {-1.0, 0.0, 2.0}, TimeGrid{}), ConfigError);
}

TEST_CASE("scan results do not depend on the worker count") {
  const auto dets = linspace(-6.0, 6.0, 9);
  const TimeGrid grid{0.0, 4.0, 401};
  const auto a = detuning_scan(ExpDecay{1.0, 2.5, 0.0}, 1.0, dets, grid, {}, 1);
  const auto b = detuning_scan(ExpDecay{1.0, 2.5, 0.0}, 1.0, dets, grid, {}, 3);
  CHECK((a.coh_sq.values - b.coh_sq.values).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("ridge contrast on synthetic maps") {
  const TimeGrid grid{0.0, 8.0, 2001};
  const auto dets = linspace(-15.0, 15.0, 61);
  const auto one = synthetic(dets, grid, [](double d, double t) { return std::cos(d * t) * std::exp(-0.5 * t); });
  const auto both = synthetic(dets, grid, [](double d, double t) {
    return (std::cos(d * t) + 0.5 * std::cos(2.0 * d * t)) * std::exp(-0.5 * t);
  });
  const auto f1 = ffc_transform(one);
  const auto f2 = ffc_transform(both);
  CHECK(diagonal_strength(f1, 1) > 3.0);
  CHECK(diagonal_strength(f1, 2) < 1.5);
  CHECK(diagonal_strength(f2, 2) > 3.0);
  CHECK_THROWS_AS(diagonal_strength(f1, 2, 1.0, 50.0), DomainError);
  CHECK_THROWS_AS(diagonal_strength(f1, 3), ConfigError);
}

TEST_CASE("spectrum export") {
  auto map = synthetic({-1.0, 1.0}, TimeGrid{0.0, 1.0, 3}, [](double d, double t) { return d * t; });
  map.channel = "pop";
  write_spectrum("spectrum_test_out.csv", map);
  std::ifstream in("spectrum_test_out.csv");
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  CHECK(header == "detuning,0,0.5,1");
  CHECK(row == "-1,-0,-0.5,-1");
  std::ifstream meta("spectrum_test_out.json");
  CHECK(meta.good());
}
