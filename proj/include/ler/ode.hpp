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

#include <cstddef>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace ler {

struct OdeOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  double initial_step = 0.0;  ///< 0 picks a step from the local derivative scale
  double max_step = 0.0;      ///< 0 means unbounded
  std::size_t max_steps = 50'000'000;
};

struct OdeStats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t rhs_evals = 0;
};

using OdeRhs = std::function<void(double, const Eigen::VectorXd&, Eigen::VectorXd&)>;
/// Called after every accepted step with (t, y); may throw to abort.
using StepHook = std::function<void(double, const Eigen::VectorXd&)>;

/// Dormand–Prince 5(4) with Hairer's 4th-order dense output, sampled at `outputs`
/// (non-decreasing, all ≥ t0). Throws StiffnessError when the step size underflows.
std::vector<Eigen::VectorXd> integrate_dopri5(const OdeRhs& rhs, const Eigen::VectorXd& y0,
                                              double t0, const std::vector<double>& outputs,
                                              const OdeOptions& opts, const StepHook& hook = {},
                                              OdeStats* stats = nullptr);

}  // namespace ler
