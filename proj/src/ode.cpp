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

#include "ler/ode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ler/errors.hpp"

namespace ler {

namespace {

// Butcher tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                 a76 = 11.0 / 84;
// Error weights: 5th minus 4th order.
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
// Dense output.
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

double error_norm(const Eigen::VectorXd& err, const Eigen::VectorXd& y0, const Eigen::VectorXd& y1,
                  const OdeOptions& o) {
  const Eigen::ArrayXd sc = o.atol + o.rtol * y0.cwiseAbs().cwiseMax(y1.cwiseAbs()).array();
  return std::sqrt((err.array() / sc).square().mean());
}

}  // namespace

std::vector<Eigen::VectorXd> integrate_dopri5(const OdeRhs& rhs, const Eigen::VectorXd& y0,
                                              double t0, const std::vector<double>& outputs,
                                              const OdeOptions& opts, const StepHook& hook,
                                              OdeStats* stats) {
  std::vector<Eigen::VectorXd> out;
  out.reserve(outputs.size());
  if (outputs.empty()) return out;
  const double tend = outputs.back();
  std::size_t next = 0;
  while (next < outputs.size() && outputs[next] <= t0) {
    out.push_back(y0);
    ++next;
  }
  if (next == outputs.size()) return out;

  const Eigen::Index n = y0.size();
  Eigen::VectorXd y = y0, ynew(n), ytmp(n), err(n);
  Eigen::VectorXd k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n);
  Eigen::VectorXd r1(n), r2(n), r3(n), r4(n), r5(n);
  OdeStats st;
  double t = t0;
  rhs(t, y, k1);
  ++st.rhs_evals;

  const double span = tend - t0;
  const double hmax = opts.max_step > 0.0 ? opts.max_step : span;
  double h = opts.initial_step;
  if (!(h > 0.0)) {
    // Hairer's starting-step heuristic, first stage only.
    const Eigen::ArrayXd sc = opts.atol + opts.rtol * y.cwiseAbs().array();
    const double dnf = std::sqrt((k1.array() / sc).square().mean());
    const double dny = std::sqrt((y.array() / sc).square().mean());
    h = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6 : 0.01 * dny / dnf;
    h = std::min({h, hmax, span});
    h = std::max(h, 1e-10 * span);
  }

  double facold = 1e-4;
  bool last_rejected = false;
  while (next < outputs.size()) {
    if (st.accepted + st.rejected >= opts.max_steps) {
      throw StiffnessError("step budget exhausted at t = " + std::to_string(t));
    }
    const bool final_step = t + 1.01 * h >= tend;
    if (final_step) h = tend - t;
    if (h <= 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t))) {
      throw StiffnessError("step size underflow at t = " + std::to_string(t));
    }

    ytmp = y + h * a21 * k1;
    rhs(t + c2 * h, ytmp, k2);
    ytmp = y + h * (a31 * k1 + a32 * k2);
    rhs(t + c3 * h, ytmp, k3);
    ytmp = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
    rhs(t + c4 * h, ytmp, k4);
    ytmp = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
    rhs(t + c5 * h, ytmp, k5);
    ytmp = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
    const double tnew = final_step ? tend : t + h;
    rhs(tnew, ytmp, k6);
    ynew = y + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
    rhs(tnew, ynew, k7);
    st.rhs_evals += 6;
    err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    const double en = error_norm(err, y, ynew, opts);

    // Lund-stabilised PI controller, beta = 0.04.
    const double fac11 = std::pow(en, 0.2 - 0.04 * 0.75);
    double fac = fac11 / std::pow(facold, 0.04) / 0.9;
    fac = std::clamp(fac, 0.1, 5.0);
    double hnew = h / fac;

    if (en <= 1.0) {
      facold = std::max(en, 1e-4);
      ++st.accepted;
      r1 = y;
      r2 = ynew - y;
      r3 = h * k1 - r2;
      r4 = r2 - h * k7 - r3;
      r5 = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
      while (next < outputs.size() && outputs[next] <= tnew) {
        const double th = (outputs[next] - t) / h;
        const double th1 = 1.0 - th;
        out.push_back(r1 + th * (r2 + th1 * (r3 + th * (r4 + th1 * r5))));
        ++next;
      }
      if (final_step) {
        // Exact endpoint rather than the interpolant.
        if (!out.empty() && outputs.back() == tend) out.back() = ynew;
      }
      if (hook) hook(tnew, ynew);
      y = ynew;
      k1 = k7;
      t = tnew;
      if (last_rejected) hnew = std::min(hnew, h);
      last_rejected = false;
      h = std::min(hnew, hmax);
    } else {
      hnew = h / std::min(1.0 / 0.2, fac11 / 0.9);
      last_rejected = true;
      ++st.rejected;
      h = hnew;
    }
  }
  if (stats) *stats = st;
  return out;
}

}  // namespace ler
