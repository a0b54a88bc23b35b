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

#include "ler/runner.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <mutex>
#include <thread>

#include "ler/bloch.hpp"
#include "ler/csv.hpp"
#include "ler/errors.hpp"
#include "ler/manybody.hpp"
#include "ler/observables.hpp"
#include "ler/spectra.hpp"

namespace ler {

namespace {

std::string short_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// Runs jobs[0..n) on up to `threads` workers. The first exception is rethrown after joining.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& job) {
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex m;
  auto worker = [&] {
    for (std::size_t k = next++; k < n; k = next++) {
      try {
        job(k);
      } catch (...) {
        std::lock_guard<std::mutex> lock(m);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const unsigned count = std::max(1u, std::min<unsigned>(threads, unsigned(std::max<std::size_t>(n, 1))));
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < count; ++k) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

class Writer {
 public:
  explicit Writer(std::string dir) : dir_(std::move(dir)) {}

  std::string path(const std::string& name) {
    std::lock_guard<std::mutex> lock(m_);
    files_.push_back(name);
    return (std::filesystem::path(dir_) / name).string();
  }
  // Sidecars written by write_spectrum.
  void note(const std::string& name) {
    std::lock_guard<std::mutex> lock(m_);
    files_.push_back(name);
  }
  std::vector<std::string> files() const {
    auto f = files_;
    std::sort(f.begin(), f.end());
    return f;
  }
  const std::string& dir() const { return dir_; }

 private:
  std::string dir_;
  std::mutex m_;
  std::vector<std::string> files_;
};

void run_fig2(const RunConfig& c, const RunContext& ctx, Writer& out) {
  if (c.areas.empty() || c.coupling_scales.empty()) {
    throw ConfigError("fig2 needs sweep/areas_pi and sweep/coupling_scales");
  }
  const auto params = c.physical();
  const auto geometry = c.geometry();
  struct Job {
    double area, scale;
  };
  std::vector<Job> jobs;
  for (double a : c.areas) {
    for (double s : c.coupling_scales) jobs.push_back({a, s * c.coupling_scale});
  }
  parallel_for(jobs.size(), ctx.threads, [&](std::size_t k) {
    const auto& job = jobs[k];
    const auto couplings = chain_couplings(params, geometry, job.scale);
    const auto rho0 = prepare_impulsive(geometry, job.area);
    const auto traj = evolve(rho0, couplings, std::nullopt, c.time, c.manybody);
    const std::string tag = area_label(job.area) + "_j" + short_number(job.scale);
    write_observables_csv(out.path("ratio_" + tag + ".csv"), intensities(traj, geometry));
    write_manybody_csv(out.path("traj_" + tag + ".csv"), traj);
  });
}

void write_peak_sweep(const RunConfig& c, const RunContext& ctx, Writer& out) {
  if (c.peak_areas.empty()) return;
  std::vector<std::vector<double>> rows(c.peak_areas.size());
  parallel_for(c.peak_areas.size(), ctx.threads, [&](std::size_t k) {
    const double area = c.peak_areas[k];
    const auto traj = integrate_bloch(ExpDecay{area, c.pulse.gamma_a, c.pulse.delta}, c.gamma, c.time, c.ode);
    double tc = std::nan(""), tp = std::nan(""), dev = std::nan("");
    try {
      const auto r = peak_analysis(traj.times, traj.coherence_squared(), traj.populations());
      tc = r.t_coh_max;
      tp = r.t_pop_max;
      dev = r.peak_deviation;
    } catch (const NoPeakError&) {
    }
    rows[k] = {area / kPi, tc, tp, dev};
  });
  CsvTable table({"area_pi", "t_coh_max", "t_pop_max", "peak_deviation"});
  for (const auto& r : rows) table.add_row(r);
  table.save(out.path("peak_deviation.csv"));
}

void run_fig3(const RunConfig& c, const RunContext& ctx, Writer& out) {
  Json rabi = Json::array();
  std::vector<Json> rabi_rows(c.areas.size());
  parallel_for(c.areas.size(), ctx.threads, [&](std::size_t k) {
    const double area = c.areas[k];
    const auto traj = integrate_bloch(ExpDecay{area, c.pulse.gamma_a, c.pulse.delta}, c.gamma, c.time, c.ode);
    const std::string tag = area_label(area);
    write_bloch_csv(out.path("traj_" + tag + ".csv"), traj);
    write_observables_csv(out.path("observables_" + tag + ".csv"), intensities(traj));
    try {
      const auto r = peak_analysis(traj.times, traj.coherence_squared(), traj.populations());
      write_text_file(out.path("peak_" + tag + ".json"), peak_report_json(r));
    } catch (const NoPeakError&) {
    }
    const double lo = c.time.start;
    const double hi = c.time.start + c.rabi_window;
    const auto fp = dominant_frequency(traj.times, traj.populations(), lo, hi);
    const auto fc = dominant_frequency(traj.times, traj.coherence_squared(), lo, hi);
    Json j;
    j["area_pi"] = area / kPi;
    j["window"] = {lo, hi};
    j["bin_width"] = fp.bin_width;
    j["omega_pop"] = fp.omega;
    j["omega_coh_sq"] = fc.omega;
    j["low_confidence_pop"] = fp.low_confidence;
    j["low_confidence_coh_sq"] = fc.low_confidence;
    rabi_rows[k] = std::move(j);
  });
  for (auto& r : rabi_rows) rabi.push_back(std::move(r));
  if (!c.areas.empty()) write_text_file(out.path("rabi.json"), rabi.dump(2) + "\n");
  write_peak_sweep(c, ctx, out);
}

void run_scans(const RunConfig& c, const RunContext& ctx, Writer& out, bool ffc) {
  if (c.areas.empty()) throw ConfigError(c.preset + " needs sweep/areas_pi");
  Json scores = Json::array();
  CsvTable table({"area_pi", "pop_slope1", "pop_slope2", "coh_sq_slope1", "coh_sq_slope2"});
  for (double area : c.areas) {
    const auto scan = detuning_scan(ExpDecay{area, c.pulse.gamma_a, 0.0}, c.gamma, c.detunings,
                                    c.time, c.ode, ctx.threads);
    const std::string tag = area_label(area);
    auto emit = [&](const Spectrum2D& s, const std::string& name) {
      write_spectrum(out.path(name + ".csv"), s);
      out.note(name + ".json");
    };
    if (!ffc) {
      emit(scan.coh_sq, "map_coh_sq_" + tag);
      emit(scan.pop, "map_pop_" + tag);
      continue;
    }
    const auto fc = ffc_transform(scan.coh_sq, c.ffc_padding);
    const auto fp = ffc_transform(scan.pop, c.ffc_padding);
    emit(fc, "ffc_coh_sq_" + tag);
    emit(fp, "ffc_pop_" + tag);
    const double p1 = diagonal_strength(fp, 1, c.gamma, c.ridge_band);
    const double p2 = diagonal_strength(fp, 2, c.gamma, c.ridge_band);
    const double c1 = diagonal_strength(fc, 1, c.gamma, c.ridge_band);
    const double c2 = diagonal_strength(fc, 2, c.gamma, c.ridge_band);
    table.add_row({area / kPi, p1, p2, c1, c2});
    Json j;
    j["area_pi"] = area / kPi;
    j["pop"] = {{"slope1", p1}, {"slope2", p2}};
    j["coh_sq"] = {{"slope1", c1}, {"slope2", c2}};
    scores.push_back(std::move(j));
  }
  if (ffc) {
    table.save(out.path("ridge_scores.csv"));
    write_text_file(out.path("ridge_scores.json"), scores.dump(2) + "\n");
  }
}

void run_custom(const RunConfig& c, Writer& out) {
  const auto pulse = c.pulse.build();
  if (c.model == "bloch") {
    const Pulse p = pulse.value_or(Pulse{Constant{0.0, 0.0}});
    const auto traj = integrate_bloch(p, c.gamma, c.time, c.ode);
    write_bloch_csv(out.path("trajectory.csv"), traj);
    write_observables_csv(out.path("observables.csv"), intensities(traj));
    return;
  }
  const auto params = c.physical();
  const auto geometry = c.geometry();
  const auto couplings = c.n > 1 ? chain_couplings(params, geometry, c.coupling_scale)
                                 : independent_couplings(params, 1);
  ManyBodyTrajectory traj;
  if (pulse && is_impulsive(*pulse)) {
    traj = evolve(prepare_impulsive(geometry, std::get<Impulsive>(*pulse).area), couplings,
                  std::nullopt, c.time, c.manybody);
  } else {
    std::optional<Drive> drive;
    if (pulse) drive = Drive{*pulse, geometry.phase_in};
    traj = evolve(DensityMatrix(c.n), couplings, drive, c.time, c.manybody);
  }
  write_manybody_csv(out.path("trajectory.csv"), traj);
  write_observables_csv(out.path("observables.csv"), intensities(traj, geometry));
}

[[noreturn]] void rethrow_with_context(const std::string& preset, const Error& e) {
  const std::string msg = "[" + preset + "] " + e.what();
  if (e.kind() == ErrorKind::Config) throw ConfigError(msg);
  throw SolverFailure(msg);
}

}  // namespace

std::string area_label(double area) { return "a" + short_number(area / kPi) + "pi"; }

Json derived_numbers(const RunConfig& c) {
  Json d;
  const auto p = c.physical();
  d["gamma_rad"] = p.gamma_rad;
  d["gamma_ic"] = p.gamma_ic;
  d["gamma_total_check"] = p.total_width();
  const double eta = 2.0 * kPi * c.r0_pm / c.lambda0_pm;
  d["eta_nearest"] = eta;
  const double j0 = 1.5 * p.gamma_rad *
                    (std::cos(eta) / eta - std::sin(eta) / (eta * eta) - std::cos(eta) / (eta * eta * eta));
  d["j0_nearest"] = j0;
  d["j0_nearest_over_gamma_rad"] = j0 / p.gamma_rad;
  d["phase_step_rad"] = c.phase_step;
  d["time_step"] = c.time.step();
  if (!c.detunings.empty()) d["detuning_step"] = c.detunings.size() > 1 ? c.detunings[1] - c.detunings[0] : 0.0;
  Json areas = Json::array();
  for (double a : c.areas) areas.push_back(a);
  d["areas_rad"] = areas;
  if (c.pulse.type == "exp_decay") {
    d["exp_decay_peak_rabi"] = 2.0 * c.pulse.gamma_a * c.pulse.area;
  }
  return d;
}

RunSummary run(const RunConfig& c, const RunContext& ctx) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::string dir = (std::filesystem::path(ctx.out_dir) / c.preset).string();
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory '" + dir + "': " + ec.message());
  Writer out(dir);
  try {
    if (c.preset == "fig2") {
      run_fig2(c, ctx, out);
    } else if (c.preset == "fig3") {
      run_fig3(c, ctx, out);
    } else if (c.preset == "peakdev") {
      write_peak_sweep(c, ctx, out);
    } else if (c.preset == "fig4") {
      run_scans(c, ctx, out, false);
    } else if (c.preset == "fig5") {
      run_scans(c, ctx, out, true);
    } else {
      run_custom(c, out);
    }
  } catch (const Error& e) {
    rethrow_with_context(c.preset, e);
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  RunSummary s;
  s.directory = dir;
  s.files = out.files();
  s.wall_seconds = wall;
  Json manifest;
  manifest["tool"] = "lersim";
  manifest["version"] = kVersion;
  manifest["preset"] = c.preset;
  manifest["threads"] = ctx.threads;
  manifest["wall_clock_seconds"] = wall;
  manifest["config"] = c.document;
  manifest["derived"] = derived_numbers(c);
  manifest["files"] = s.files;
  write_text_file((std::filesystem::path(dir) / "manifest.json").string(), manifest.dump(2) + "\n");
  return s;
}

}  // namespace ler
