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

#include "ler/spectra.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <thread>

#include <json.hpp>

#include "ler/bloch.hpp"
#include "ler/csv.hpp"
#include "ler/errors.hpp"
#include "ler/fourier.hpp"

namespace ler {

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  if (n == 1) return {lo};
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    out[k] = k + 1 == n ? hi : lo + (hi - lo) * double(k) / double(n - 1);
  }
  return out;
}

ScanResult detuning_scan(const ExpDecay& templ, double gamma, const std::vector<double>& detunings,
                         const TimeGrid& grid, const OdeOptions& opts, unsigned threads) {
  grid.validate();
  if (detunings.empty()) throw ConfigError("detuning grid is empty");
  for (std::size_t k = 0; k < detunings.size(); ++k) {
    if (k && !(detunings[k] > detunings[k - 1])) {
      throw ConfigError("detuning grid must be strictly increasing");
    }
    if (std::abs(detunings[k] + detunings[detunings.size() - 1 - k]) > 1e-9) {
      throw ConfigError("detuning grid must be symmetric about 0");
    }
  }
  const auto rows = Eigen::Index(detunings.size());
  const auto cols = Eigen::Index(grid.samples);
  ScanResult out;
  for (Spectrum2D* s : {&out.coh_sq, &out.pop}) {
    s->kind = SpectrumKind::TimeFrequency;
    s->detunings = detunings;
    s->axis = grid.times();
    s->values = Eigen::MatrixXd::Zero(rows, cols);
    s->row_failed.assign(detunings.size(), false);
    s->area = templ.area;
    s->gamma_a = templ.decay_rate;
  }
  out.coh_sq.channel = "coh_sq";
  out.pop.channel = "pop";

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t r = next++; r < detunings.size(); r = next++) {
      ExpDecay p = templ;
      p.detuning = detunings[r];
      try {
        const auto traj = integrate_bloch(p, gamma, grid, opts);
        for (Eigen::Index c = 0; c < cols; ++c) {
          const auto& s = traj.states[std::size_t(c)];
          out.pop.values(Eigen::Index(r), c) = s.rho_ee;
          out.coh_sq.values(Eigen::Index(r), c) = std::norm(s.rho_ge);
        }
      } catch (const Error&) {
        out.pop.row_failed[r] = true;
        out.coh_sq.row_failed[r] = true;
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(threads, unsigned(detunings.size())));
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < n; ++k) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return out;
}

Spectrum2D ffc_transform(const Spectrum2D& map, std::size_t padding) {
  if (map.kind != SpectrumKind::TimeFrequency) throw ConfigError("ffc_transform needs a time map");
  if (padding == 0) throw ConfigError("padding must be >= 1");
  const std::size_t n = map.axis.size();
  if (n < 2) throw GridError("time axis needs at least 2 samples");
  const double dt = map.axis[1] - map.axis[0];
  for (std::size_t k = 1; k < n; ++k) {
    if (std::abs(map.axis[k] - map.axis[k - 1] - dt) > 1e-9 * dt) {
      throw GridError("non-uniform time grid; resample before the FFC transform");
    }
  }
  const std::size_t len = padding * n;
  const auto half = std::ptrdiff_t(len / 2);
  Spectrum2D out;
  out.kind = SpectrumKind::FFC;
  out.detunings = map.detunings;
  out.row_failed = map.row_failed;
  out.channel = map.channel;
  out.area = map.area;
  out.gamma_a = map.gamma_a;
  out.window = "rectangular";
  out.padding = padding;
  out.axis.resize(len);
  for (std::size_t j = 0; j < len; ++j) {
    out.axis[j] = 2.0 * kPi * double(std::ptrdiff_t(j) - half) / (double(len) * dt);
  }
  out.values.resize(map.values.rows(), Eigen::Index(len));
  std::vector<double> row(n);
  for (Eigen::Index r = 0; r < map.values.rows(); ++r) {
    const double mean = map.values.row(r).mean();
    for (std::size_t k = 0; k < n; ++k) row[k] = map.values(r, Eigen::Index(k)) - mean;
    const auto spec = dft_real(row, len);
    for (std::size_t j = 0; j < len; ++j) {
      const auto src = std::size_t((std::ptrdiff_t(j) - half + std::ptrdiff_t(len)) % std::ptrdiff_t(len));
      out.values(r, Eigen::Index(j)) = std::log10(std::norm(spec[src]) + kLogFloor);
    }
  }
  return out;
}

namespace {

// Moving average over `size` bins, window [k − size/2, k + size − size/2 − 1], mirrored edges.
Eigen::ArrayXd smooth(const Eigen::ArrayXd& v, Eigen::Index size) {
  const Eigen::Index n = v.size();
  auto at = [&](Eigen::Index k) {
    while (k < 0 || k >= n) k = k < 0 ? -k - 1 : 2 * n - k - 1;
    return v[k];
  };
  Eigen::ArrayXd out(n);
  const Eigen::Index lo = size / 2;
  for (Eigen::Index k = 0; k < n; ++k) {
    double acc = 0.0;
    for (Eigen::Index j = k - lo; j < k - lo + size; ++j) acc += at(j);
    out[k] = acc / double(size);
  }
  return out;
}

double median(std::vector<double> v) {
  const std::size_t m = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + std::ptrdiff_t(m), v.end());
  const double hi = v[m];
  if (v.size() % 2 == 1) return hi;
  const double lo = *std::max_element(v.begin(), v.begin() + std::ptrdiff_t(m));
  return 0.5 * (lo + hi);
}

}  // namespace

double diagonal_strength(const Spectrum2D& ffc, int slope, double gamma, double band) {
  if (ffc.kind != SpectrumKind::FFC) throw ConfigError("diagonal_strength needs an FFC map");
  if (slope != 1 && slope != 2) throw ConfigError("slope must be 1 or 2");
  const auto len = Eigen::Index(ffc.axis.size());
  if (len < 8) throw GridError("frequency axis too short");
  const double dw = ffc.axis[1] - ffc.axis[0];
  const double w0 = ffc.axis[0];
  // Curvature lag of ~1.5 line widths; smoothing over one padding period removes sinc ripple.
  const auto h = std::max<Eigen::Index>(1, Eigen::Index(std::lround(1.5 * gamma / dw)));
  const auto pad = std::max<Eigen::Index>(1, Eigen::Index(ffc.padding));
  if (2 * h + 3 > len) throw GridError("frequency axis too short for the ridge statistic");

  std::vector<double> ridge;
  std::vector<double> background;
  for (Eigen::Index r = 0; r < ffc.values.rows(); ++r) {
    const double d = std::abs(ffc.detunings[std::size_t(r)]);
    if (d < band - 1e-9 || ffc.row_failed[std::size_t(r)]) continue;
    const Eigen::ArrayXd sm = smooth(ffc.values.row(r).transpose().array(), pad);
    Eigen::ArrayXd stat = Eigen::ArrayXd::Zero(len);
    for (Eigen::Index k = h; k < len - h; ++k) {
      stat[k] = std::abs(sm[k] - 0.5 * (sm[k - h] + sm[k + h]));
    }
    for (Eigen::Index k = 0; k < len; ++k) {
      const double w = std::abs(ffc.axis[std::size_t(k)]);
      const double gap = double(h) * dw;
      if (w <= 2.5 * d && w >= gap && std::abs(w - d) > gap && std::abs(w - 2.0 * d) > gap) {
        background.push_back(stat[k]);
      }
    }
    for (double sign : {1.0, -1.0}) {
      const auto k = Eigen::Index(std::lround((sign * slope * ffc.detunings[std::size_t(r)] - w0) / dw));
      if (k < 1 || k + 1 >= len) continue;
      ridge.push_back(std::max({stat[k - 1], stat[k], stat[k + 1]}));
    }
  }
  if (ridge.empty() || background.empty()) {
    throw DomainError("no detuning rows with |delta| >= " + format_double(band) + " for ridge scoring");
  }
  double mean = 0.0;
  for (double v : ridge) mean += v;
  mean /= double(ridge.size());
  const double ref = median(background);
  if (!(ref > 0.0)) throw DomainError("ridge background is identically zero");
  return mean / ref;
}

void write_spectrum(const std::string& csv_path, const Spectrum2D& s) {
  std::vector<std::string> header{"detuning"};
  for (double a : s.axis) header.push_back(format_double(a));
  CsvTable table(header);
  std::vector<double> row(s.axis.size() + 1);
  for (Eigen::Index r = 0; r < s.values.rows(); ++r) {
    row[0] = s.detunings[std::size_t(r)];
    for (Eigen::Index c = 0; c < s.values.cols(); ++c) row[std::size_t(c) + 1] = s.values(r, c);
    table.add_row(row);
  }
  table.save(csv_path);

  nlohmann::ordered_json meta;
  meta["kind"] = s.kind == SpectrumKind::FFC ? "ffc" : "time_frequency";
  meta["channel"] = s.channel;
  meta["area"] = s.area;
  meta["area_pi"] = s.area / kPi;
  meta["gamma_a"] = s.gamma_a;
  meta["window"] = s.window;
  meta["padding"] = s.padding;
  meta["axis"] = s.kind == SpectrumKind::FFC ? "omega" : "t";
  meta["log_floor"] = s.kind == SpectrumKind::FFC ? kLogFloor : 0.0;
  std::vector<double> failed;
  for (std::size_t r = 0; r < s.row_failed.size(); ++r) {
    if (s.row_failed[r]) failed.push_back(s.detunings[r]);
  }
  meta["failed_detunings"] = failed;
  const std::string json_path = std::filesystem::path(csv_path).replace_extension(".json").string();
  write_text_file(json_path, meta.dump(2) + "\n");
}

}  // namespace ler
