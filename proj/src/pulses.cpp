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

#include "ler/pulses.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "ler/errors.hpp"

namespace ler {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

cplx sampled_at(const Sampled& s, double t) {
  if (s.t.empty() || t < s.t.front() || t > s.t.back()) {
    return {0.0, 0.0};
  }
  auto it = std::upper_bound(s.t.begin(), s.t.end(), t);
  if (it == s.t.end()) {
    return s.omega.back();
  }
  const auto hi = std::size_t(it - s.t.begin());
  const std::size_t lo = hi - 1;
  const double w = (t - s.t[lo]) / (s.t[hi] - s.t[lo]);
  return (1.0 - w) * s.omega[lo] + w * s.omega[hi];
}

}  // namespace

void validate_pulse(const Pulse& pulse) {
  std::visit(overloaded{
                 [](const Impulsive& p) {
                   if (!(p.area >= 0.0)) throw ConfigError("pulse area must be >= 0");
                 },
                 [](const ExpDecay& p) {
                   if (!(p.area >= 0.0)) throw ConfigError("pulse area must be >= 0");
                   if (!(p.decay_rate > 0.0)) throw ConfigError("gamma_a must be > 0");
                   if (!std::isfinite(p.detuning)) throw ConfigError("delta must be finite");
                 },
                 [](const Constant& p) {
                   if (!(p.amplitude >= 0.0)) throw ConfigError("omega0_amp must be >= 0");
                   if (!std::isfinite(p.detuning)) throw ConfigError("delta must be finite");
                 },
                 [](const Sampled& p) {
                   if (p.t.size() != p.omega.size() || p.t.size() < 2) {
                     throw ConfigError("sampled pulse needs >= 2 matching (t, omega) samples");
                   }
                   for (std::size_t k = 1; k < p.t.size(); ++k) {
                     if (!(p.t[k] > p.t[k - 1])) {
                       throw ConfigError("sampled pulse times must be strictly increasing");
                     }
                   }
                 },
             },
             pulse);
}

cplx evaluate(const Pulse& pulse, double t) {
  return std::visit(
      overloaded{
          [](const Impulsive&) -> cplx {
            throw UnsupportedOperation("impulsive pulses have no pointwise envelope");
          },
          [t](const ExpDecay& p) -> cplx {
            if (t < 0.0) return {0.0, 0.0};
            return 2.0 * p.decay_rate * p.area * std::exp(-p.decay_rate * t) *
                   std::polar(1.0, -p.detuning * t);
          },
          [t](const Constant& p) -> cplx { return p.amplitude * std::polar(1.0, -p.detuning * t); },
          [t](const Sampled& p) -> cplx { return sampled_at(p, t); },
      },
      pulse);
}

double pulse_area(const Pulse& pulse, double t) {
  return std::visit(
      overloaded{
          [](const Impulsive& p) { return p.area; },
          [t](const ExpDecay& p) {
            return t <= 0.0 ? 0.0 : -p.area * std::expm1(-p.decay_rate * t);
          },
          [t](const Constant& p) { return t <= 0.0 ? 0.0 : 0.5 * p.amplitude * t; },
          [t](const Sampled& p) {
            double acc = 0.0;
            for (std::size_t k = 1; k < p.t.size() && p.t[k - 1] < t; ++k) {
              const double b = std::min(p.t[k], t);
              const double fa = std::abs(p.omega[k - 1]);
              const double fb = std::abs(sampled_at(p, b));
              acc += 0.5 * (fa + fb) * (b - p.t[k - 1]);
            }
            return 0.5 * acc;
          },
      },
      pulse);
}

bool is_impulsive(const Pulse& pulse) { return std::holds_alternative<Impulsive>(pulse); }

TwoLevelState impulsive_state(double area, double phase) {
  const double s = std::sin(area);
  TwoLevelState st;
  st.rho_ee = s * s;
  st.rho_ge = cplx{0.0, -0.5 * std::sin(2.0 * area)} * std::polar(1.0, phase);
  return st;
}

std::string pulse_name(const Pulse& pulse) {
  return std::visit(overloaded{
                        [](const Impulsive&) { return std::string("impulsive"); },
                        [](const ExpDecay&) { return std::string("exp_decay"); },
                        [](const Constant&) { return std::string("constant"); },
                        [](const Sampled&) { return std::string("sampled"); },
                    },
                    pulse);
}

Sampled load_sampled(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open pulse samples file '" + path + "'");
  }
  Sampled s;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    double t = 0.0, re = 0.0, im = 0.0;
    if (!(fields >> t >> re >> im)) {
      if (lineno == 1) continue;  // header
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected t, re, im");
    }
    s.t.push_back(t);
    s.omega.emplace_back(re, im);
  }
  validate_pulse(Pulse{s});
  return s;
}

}  // namespace ler
