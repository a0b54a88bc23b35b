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

namespace ler {

/// Shortest decimal that round-trips to the same double; non-finite values print as "nan".
std::string format_double(double v);

/// Accumulates a CSV document in memory; `save` writes it in one go.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  void add_row(const std::vector<double>& values);
  std::size_t rows() const { return rows_; }
  const std::string& text() const { return text_; }
  void save(const std::string& path) const;

 private:
  std::size_t columns_;
  std::size_t rows_ = 0;
  std::string text_;
};

/// Writes `contents` to `path`, creating parent directories. Throws ConfigError on failure.
void write_text_file(const std::string& path, const std::string& contents);

}  // namespace ler
