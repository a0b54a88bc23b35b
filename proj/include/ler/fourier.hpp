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

#include <vector>

#include "ler/types.hpp"

namespace ler {

/// Full-length DFT X_k = Σ_n x_n e^{−2πikn/L} of a real sequence zero-padded to `length`.
std::vector<cplx> dft_real(const std::vector<double>& x, std::size_t length);

}  // namespace ler
