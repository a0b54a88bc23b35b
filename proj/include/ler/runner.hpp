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

#include <string>
#include <vector>

#include "ler/config.hpp"

namespace ler {

inline constexpr const char* kVersion = "0.1.0";

struct RunContext {
  std::string out_dir = "out";
  unsigned threads = 1;
};

struct RunSummary {
  std::string directory;
  std::vector<std::string> files;  ///< relative to `directory`, manifest excluded
  double wall_seconds = 0.0;
};

/// Derived numbers echoed into the manifest (line widths, nearest-neighbour coupling).
Json derived_numbers(const RunConfig& config);

/// Executes the preset and writes `<out>/<preset>/` plus manifest.json.
/// Module errors are rethrown with the preset name prefixed, keeping their kind.
RunSummary run(const RunConfig& config, const RunContext& ctx);

/// Label used in file names, e.g. 0.2π → "a0.2pi".
std::string area_label(double area);

}  // namespace ler
