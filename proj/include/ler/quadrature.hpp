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

#include <functional>

#include "ler/types.hpp"

namespace ler {

using ComplexIntegrand = std::function<cplx(double)>;

/// Adaptive Simpson quadrature of a complex integrand on [a, b] to absolute tolerance `tol`.
cplx adaptive_simpson(const ComplexIntegrand& f, double a, double b, double tol = 1e-10,
                      int max_depth = 40);

/// Composite Simpson over uniform samples (odd count); the trailing interval falls back to
/// the trapezoid rule when the count is even.
cplx simpson_uniform(const std::vector<cplx>& samples, double h);

}  // namespace ler
