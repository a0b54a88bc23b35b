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

#include "ler/observables.hpp"

#include <cmath>
#include <string>

#include <json.hpp>

#include "ler/csv.hpp"
#include "ler/errors.hpp"
#include "ler/fourier.hpp"

namespace ler {

namespace {

void fill_ratio(ObservableSeries& s) {
  s.ratio.resize(s.times.size());
  for (std::size_t k = 0; k < s.times.size(); ++k) {
    if (s.i_inc[k] > kIncoherentFloor) {
      s.ratio[k] = s.i_coh[k] / (double(s.nuclei) * s.i_inc[k]);
    } else {
      s.ratio[k].reset();
    }
  }
}

}  // namespace

ObservableSeries intensities(const ManyBodyTrajectory& traj, const EnsembleGeometry& geometry) {
  geometry.validate();
  const std::size_t n = traj.nuclei();
  if (n != geometry.n) throw ConfigError("trajectory and geometry disagree on N");
  std::vector<cplx> detect(n);
  for (std::size_t k = 0; k < n; ++k) detect[k] = std::polar(1.0, -geometry.phase_out[k]);
  ObservableSeries s;
  s.nuclei = n;
  s.times = traj.times;
  s.i_coh.resize(traj.times.size());
  s.i_inc.resize(traj.times.size());
  for (std::size_t t = 0; t < traj.times.size(); ++t) {
    cplx field{0.0, 0.0};
    double inc = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      field += detect[k] * traj.sigma_plus[t][k];
      inc += traj.population[t][k];
    }
    s.i_coh[t] = std::norm(field);
    s.i_inc[t] = std::max(inc, 0.0);
  }
  fill_ratio(s);
  return s;
}

ObservableSeries intensities(const BlochTrajectory& traj) {
  ObservableSeries s;
  s.nuclei = 1;
  s.times = traj.times;
  s.i_coh = traj.coherence_squared();
  s.i_inc = traj.populations();
  for (double& v : s.i_inc) v = std::max(v, 0.0);
  fill_ratio(s);
  return s;
}

void write_observables_csv(const std::string& path, const ObservableSeries& s) {
  CsvTable table({"t", "i_coh", "i_inc", "ratio"});
  for (std::size_t k = 0; k < s.times.size(); ++k) {
    table.add_row({s.times[k], s.i_coh[k], s.i_inc[k], s.ratio[k].value_or(std::nan(""))});
  }
  table.save(path);
}

double first_peak_time(const std::vector<double>& times, const std::vector<double>& v) {
  if (times.size() != v.size() || v.size() < 3) {
    throw NoPeakError("peak search needs at least 3 matching samples");
  }
  for (std::size_t k = 1; k + 1 < v.size(); ++k) {
    if (v[k] > v[k - 1] && v[k] > v[k + 1]) {
      const double h0 = times[k] - times[k - 1];
      const double h1 = times[k + 1] - times[k];
      // Vertex of the parabola through the three samples (non-uniform spacing allowed).
      const double d0 = (v[k] - v[k - 1]) / h0;
      const double d1 = (v[k + 1] - v[k]) / h1;
      const double curv = (d1 - d0) / (h0 + h1);
      const double slope_mid = d0 + curv * h0;  // derivative at times[k]
      return times[k] - slope_mid / (2.0 * curv);
    }
  }
  throw NoPeakError("series has no interior local maximum");
}

PeakReport peak_analysis(const std::vector<double>& times, const std::vector<double>& coh_sq,
                         const std::vector<double>& pop) {
  PeakReport r;
  r.t_coh_max = first_peak_time(times, coh_sq);
  r.t_pop_max = first_peak_time(times, pop);
  if (!(r.t_pop_max > 0.0)) throw NoPeakError("population peak at t <= 0");
  r.peak_deviation = std::abs(r.t_coh_max - r.t_pop_max) / r.t_pop_max;
  return r;
}

std::string peak_report_json(const PeakReport& r) {
  nlohmann::ordered_json j;
  j["t_coh_max"] = r.t_coh_max;
  j["t_pop_max"] = r.t_pop_max;
  j["peak_deviation"] = r.peak_deviation;
  return j.dump(2) + "\n";
}

FrequencyEstimate dominant_frequency(const std::vector<double>& times,
                                     const std::vector<double>& values, double t_lo, double t_hi) {
  if (times.size() != values.size()) throw ConfigError("times and values differ in length");
  std::vector<double> w;
  std::size_t first = times.size();
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (times[k] >= t_lo - 1e-12 && times[k] <= t_hi + 1e-12) {
      if (first == times.size()) first = k;
      w.push_back(values[k]);
    }
  }
  if (w.size() < 4) throw ConfigError("frequency window holds fewer than 4 samples");
  const double dt = times[first + 1] - times[first];
  for (std::size_t k = first + 1; k < first + w.size(); ++k) {
    if (std::abs(times[k] - times[k - 1] - dt) > 1e-9 * std::max(1.0, std::abs(dt))) {
      throw GridError("dominant_frequency needs uniform sampling");
    }
  }
  double mean = 0.0;
  for (double v : w) mean += v;
  mean /= double(w.size());
  const std::size_t m = w.size();
  for (std::size_t k = 0; k < m; ++k) {
    const double hann = 0.5 - 0.5 * std::cos(2.0 * kPi * double(k) / double(m - 1));
    w[k] = (w[k] - mean) * hann;
  }
  const std::size_t len = 4 * m;
  const auto spec = dft_real(w, len);
  FrequencyEstimate est;
  est.bin_width = 2.0 * kPi / (double(len) * dt);
  double best = -1.0;
  std::size_t best_k = 0;
  for (std::size_t k = 1; k + 1 <= len / 2; ++k) {
    const double a = std::abs(spec[k]);
    if (a > std::abs(spec[k - 1]) && a >= std::abs(spec[k + 1]) && a > best) {
      best = a;
      best_k = k;
    }
  }
  if (best_k == 0) {
    est.low_confidence = true;
    return est;
  }
  est.omega = double(best_k) * est.bin_width;
  const double span = dt * double(m - 1);
  est.low_confidence = span < 2.0 * (2.0 * kPi / est.omega);
  return est;
}

}  // namespace ler
