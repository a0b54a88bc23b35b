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

#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "ler/config.hpp"
#include "ler/errors.hpp"
#include "ler/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"lersim: coherent/incoherent scattering from driven nuclear ensembles"};
  std::string preset;
  std::string config_path;
  std::string out_dir = "out";
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  std::optional<double> tol;
  bool list = false;

  std::string names;
  for (const auto& n : ler::preset_names()) names += (names.empty() ? "" : ", ") + n;
  app.add_option("--preset", preset, "one of: " + names);
  app.add_option("--config", config_path, "JSON file overriding preset fields");
  app.add_option("--out", out_dir, "output root; files land in <out>/<preset>/");
  app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--tol", tol, "solver tolerance (Bloch rtol and RK4 step check)");
  app.add_flag("--list-presets", list, "print preset names and exit");
  app.set_version_flag("--version", std::string(ler::kVersion));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : ler::exit_code_for(ler::ErrorKind::Config);
  }
  if (list) {
    for (const auto& n : ler::preset_names()) std::cout << n << "\n";
    return 0;
  }

  try {
    ler::Json overrides = ler::Json::object();
    if (!config_path.empty()) overrides = ler::load_config_file(config_path);
    if (preset.empty() && !overrides.contains("preset")) {
      throw ler::ConfigError("no preset given; use --preset or a \"preset\" key in --config");
    }
    const auto config = ler::resolve_config(preset, overrides, tol);
    const auto summary = ler::run(config, {out_dir, threads});
    std::cout << "wrote " << summary.files.size() << " files + manifest.json to "
              << summary.directory << " in " << summary.wall_seconds << " s\n";
    return 0;
  } catch (const ler::Error& e) {
    std::cerr << "lersim: " << e.what() << "\n";
    return ler::exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "lersim: " << e.what() << "\n";
    return ler::exit_code_for(ler::ErrorKind::Numerical);
  }
}
