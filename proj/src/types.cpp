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

#include "ler/types.hpp"

#include <cmath>
#include <string>

#include "ler/errors.hpp"

namespace ler {

std::vector<double> TimeGrid::times() const {
  std::vector<double> out(samples);
  for (std::size_t k = 0; k < samples; ++k) {
    out[k] = at(k);
  }
  return out;
}

void TimeGrid::validate() const {
  if (samples < 2) {
    throw ConfigError("time grid needs at least 2 samples");
  }
  if (!std::isfinite(start) || !std::isfinite(stop) || !(stop > start)) {
    throw ConfigError("time grid needs finite start < stop");
  }
}

cplx exprel(cplx z) {
  // Series below |z| ~ 1e-3 keeps full precision where expm1-style cancellation bites.
  if (std::abs(z) < 1e-3) {
    return 1.0 + z * (0.5 + z * (1.0 / 6.0 + z * (1.0 / 24.0 + z / 120.0)));
  }
  if (z.imag() == 0.0) {
    return std::expm1(z.real()) / z.real();
  }
  // expm1 for complex z: e^x cos y - 1 + i e^x sin y, with cos y - 1 = -2 sin^2(y/2).
  const double x = z.real();
  const double y = z.imag();
  const double ex = std::exp(x);
  const double s = std::sin(0.5 * y);
  const cplx em1{std::expm1(x) - 2.0 * ex * s * s, ex * std::sin(y)};
  return em1 / z;
}

}  // namespace ler
