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

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace ler {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cplx kI{0.0, 1.0};

/// Uniform sampling of [start, stop] with `samples` points (both ends included).
struct TimeGrid {
  double start = 0.0;
  double stop = 8.0;
  std::size_t samples = 2001;

  double step() const { return samples > 1 ? (stop - start) / double(samples - 1) : 0.0; }
  double at(std::size_t k) const {
    return k + 1 == samples ? stop : start + double(k) * step();
  }
  std::vector<double> times() const;
  void validate() const;
};

/// (e^z - 1) / z, accurate near z = 0.
cplx exprel(cplx z);

}  // namespace ler
