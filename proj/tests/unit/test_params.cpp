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
#include <random>

#include "ler/errors.hpp"
#include "ler/params.hpp"

using namespace ler;

namespace {
PhysicalParams fe57() { return PhysicalParams::from_alpha(8.56, 1.0, 86.0, 286.0); }
}  // namespace

TEST_CASE("line-width partition from the conversion coefficient") {
  const auto p = fe57();
  CHECK(p.gamma_rad == doctest::Approx(1.0 / 19.12).epsilon(1e-14));
  CHECK(p.gamma_rad == doctest::Approx(0.05230125523).epsilon(1e-9));
  CHECK(p.total_width() == 1.0);
  CHECK(p.gamma_ic > 0.0);
  CHECK_THROWS_AS(PhysicalParams::from_alpha(-1.0, 1.0, 86.0, 286.0), ConfigError);
  CHECK_THROWS_AS(PhysicalParams::from_alpha(1.0, 0.0, 86.0, 286.0), ConfigError);
  CHECK_THROWS_AS(PhysicalParams::from_alpha(1.0, 1.0, -86.0, 286.0), ConfigError);
}

TEST_CASE("width round trip is exact over a range of alpha") {
  for (double alpha : {0.0, 0.5, 1.0, 8.56, 30.0, 1234.5}) {
    const auto p = PhysicalParams::from_alpha(alpha, 1.0, 1.0, 1.0);
    CHECK(2.0 * (p.gamma_rad + p.gamma_ic) == 1.0);
  }
}

TEST_CASE("nearest-neighbour free-space coupling") {
  const auto p = fe57();
  const auto g = EnsembleGeometry::chain(2, 286.0, false, 0.0);
  const CMatrix j = free_space_j(p, g);
  // Independent evaluation of the dipole formula at eta = 2pi*286/86.
  CHECK(j(0, 1).real() / p.gamma_rad == doctest::Approx(-0.03580410506322472).epsilon(1e-12));
  CHECK(j(0, 1).imag() == 0.0);
  CHECK(j(0, 0) == cplx{0.0, 0.0});
  CHECK(j(0, 1) == j(1, 0));
}

TEST_CASE("coupling vanishes at large separation") {
  const auto p = fe57();
  const auto g = EnsembleGeometry::chain(2, 86.0 * 1e7, false, 0.0);
  const double eta = 2.0 * kPi * 1e7;
  // Far-field envelope 1.5 Γ / η.
  CHECK(std::abs(free_space_j(p, g)(0, 1)) <= 1.5 * p.gamma_rad * (1.0 / eta + 1.0 / (eta * eta)));
  CHECK(std::abs(free_space_j(p, g)(0, 1)) < 1e-7 * p.gamma_rad);
}

TEST_CASE("periodic chains use the minimum image") {
  const auto g = EnsembleGeometry::chain(8, 286.0, true, 2.0 * kPi / 8.0);
  CHECK(g.separation(0, 7) == doctest::Approx(286.0));
  CHECK(g.separation(0, 4) == doctest::Approx(4 * 286.0));
  CHECK(g.separation(1, 6) == doctest::Approx(3 * 286.0));
  for (std::size_t k = 1; k < 8; ++k) {
    CHECK(g.phase_in[k] - g.phase_in[k - 1] == doctest::Approx(2.0 * kPi / 8.0).epsilon(1e-15));
  }
  const CMatrix j = free_space_j(fe57(), g);
  // Translation invariance on the ring.
  for (int a = 0; a < 8; ++a) {
    for (int b = 0; b < 8; ++b) {
      CHECK(std::abs(j(a, b) - j((a + 1) % 8, (b + 1) % 8)) < 1e-15);
    }
  }
  const auto open = EnsembleGeometry::chain(8, 286.0, false, 0.0);
  CHECK(open.separation(0, 7) == doctest::Approx(7 * 286.0));
}

TEST_CASE("coincident nuclei are rejected") {
  auto g = EnsembleGeometry::chain(3, 286.0, false, 0.0);
  g.positions[2] = g.positions[1];
  CHECK_THROWS_AS(free_space_j(fe57(), g), SingularGeometryError);
}

TEST_CASE("geometry validation") {
  auto g = EnsembleGeometry::chain(3, 286.0, false, 0.0);
  g.phase_out.pop_back();
  CHECK_THROWS_AS(g.validate(), ConfigError);
  CHECK_THROWS_AS(EnsembleGeometry::chain(0, 1.0, false, 0.0), ConfigError);
}

TEST_CASE("scale_coupling") {
  const auto g = EnsembleGeometry::chain(4, 286.0, false, 0.0);
  const CMatrix j = free_space_j(fe57(), g);
  CHECK((scale_coupling(j, 1.0) - j).norm() == 0.0);
  CHECK(scale_coupling(j, 0.0).norm() == 0.0);
  const CMatrix j50 = scale_coupling(j, 50.0);
  CHECK((j50 - j50.adjoint()).norm() == 0.0);
  CHECK(j50(0, 1).real() == doctest::Approx(50.0 * j(0, 1).real()));
  CHECK_THROWS_AS(scale_coupling(j, std::nan("")), ConfigError);
}

TEST_CASE("kappa construction") {
  const auto p = fe57();
  SUBCASE("single nucleus") {
    const auto c = independent_couplings(p, 1);
    CHECK(c.kappa(0, 0).real() == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(c.kappa(0, 0).imag() == 0.0);
  }
  SUBCASE("two nuclei") {
    CMatrix j = CMatrix::Zero(2, 2);
    j(0, 1) = j(1, 0) = 0.3;
    const CMatrix g = CMatrix::Identity(2, 2) * p.gamma_rad;
    const CMatrix k = build_kappa(j, g, p.gamma_ic);
    CHECK(std::abs(k(0, 1) - cplx{0.0, -0.3}) < 1e-15);
  }
  SUBCASE("strong-coupling ring") {
    const auto g = EnsembleGeometry::chain(8, 286.0, true, 2.0 * kPi / 8.0);
    const auto c = chain_couplings(p, g, 50.0);
    for (int a = 0; a < 8; ++a) {
      for (int b = 0; b < 8; ++b) {
        const cplx expect = -(c.gamma_mat(a, b) + kI * c.j(a, b)) - (a == b ? p.gamma_ic : 0.0);
        CHECK(std::abs(c.kappa(a, b) - expect) == 0.0);
        if (a == b) {
          CHECK(c.kappa(a, a).real() == doctest::Approx(-0.5).epsilon(1e-14));
        } else {
          CHECK(c.kappa(a, b).real() == 0.0);
        }
      }
    }
  }
  SUBCASE("dimension mismatch") {
    CHECK_THROWS_AS(build_kappa(CMatrix::Zero(2, 2), CMatrix::Zero(3, 3), 0.0), ConfigError);
  }
  SUBCASE("non-Hermitian J") {
    CMatrix j = CMatrix::Zero(2, 2);
    j(0, 1) = 1.0;
    CHECK_THROWS_AS(make_couplings(j, CMatrix::Identity(2, 2), 0.0), ConfigError);
  }
}

TEST_CASE("dissipativity on random positive semidefinite Gamma") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 5;
    CMatrix a(n, n), h(n, n);
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) {
        a(r, c) = cplx{nd(rng), nd(rng)};
        h(r, c) = cplx{nd(rng), nd(rng)};
      }
    }
    const CMatrix gamma = 0.1 * a * a.adjoint();
    const CMatrix j = 0.5 * (h + h.adjoint());
    const auto c = make_couplings(j, gamma, 0.2);
    const CMatrix herm = -0.5 * (c.kappa + c.kappa.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(herm);
    CHECK(es.eigenvalues().minCoeff() >= -1e-12);
  }
}
