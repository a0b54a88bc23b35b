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

#include "ler/fourier.hpp"

#include <fftw3.h>

#include <mutex>

#include "ler/errors.hpp"

namespace ler {

namespace {
// The FFTW planner is not reentrant; execution on private buffers is.
std::mutex planner_mutex;
}  // namespace

std::vector<cplx> dft_real(const std::vector<double>& x, std::size_t length) {
  if (length < x.size() || length == 0) throw ConfigError("DFT length shorter than the input");
  double* in = fftw_alloc_real(length);
  fftw_complex* out = fftw_alloc_complex(length / 2 + 1);
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex);
    plan = fftw_plan_dft_r2c_1d(int(length), in, out, FFTW_ESTIMATE);
  }
  for (std::size_t k = 0; k < length; ++k) in[k] = k < x.size() ? x[k] : 0.0;
  fftw_execute(plan);
  std::vector<cplx> spec(length);
  for (std::size_t k = 0; k <= length / 2; ++k) spec[k] = cplx{out[k][0], out[k][1]};
  for (std::size_t k = length / 2 + 1; k < length; ++k) spec[k] = std::conj(spec[length - k]);
  {
    std::lock_guard<std::mutex> lock(planner_mutex);
    fftw_destroy_plan(plan);
  }
  fftw_free(in);
  fftw_free(out);
  return spec;
}

}  // namespace ler
