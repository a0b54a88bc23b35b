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

#include <stdexcept>
#include <string>

namespace ler {

/// Broad failure class, used by the command-line runner to pick an exit code.
enum class ErrorKind {
  Config,     ///< malformed or out-of-range input
  Numerical,  ///< an integrator or transform could not produce a trusted result
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Invalid parameters, schema violations, unknown keys.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(ErrorKind::Config, what) {}
};

/// Argument outside the domain of an operation (e.g. a formula singular at Δ = 0).
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorKind::Config, what) {}
};

/// Two nuclei share a position, so the dipole-dipole coupling diverges.
class SingularGeometryError : public Error {
 public:
  explicit SingularGeometryError(const std::string& what) : Error(ErrorKind::Config, what) {}
};

/// Requested Hilbert space is larger than the dense kernel supports.
class CapacityError : public Error {
 public:
  explicit CapacityError(const std::string& what) : Error(ErrorKind::Config, what) {}
};

/// The operation is not defined for this variant (e.g. pointwise value of an impulsive pulse).
class UnsupportedOperation : public Error {
 public:
  explicit UnsupportedOperation(const std::string& what) : Error(ErrorKind::Config, what) {}
};

/// A grid did not meet the operation's precondition (uniform, increasing, long enough).
class GridError : public Error {
 public:
  explicit GridError(const std::string& what) : Error(ErrorKind::Config, what) {}
};

/// Adaptive step size collapsed.
class StiffnessError : public Error {
 public:
  explicit StiffnessError(const std::string& what) : Error(ErrorKind::Numerical, what) {}
};

/// Solution violated a physical invariant beyond tolerance.
class SolverFailure : public Error {
 public:
  explicit SolverFailure(const std::string& what) : Error(ErrorKind::Numerical, what) {}
};

/// Trace or Hermiticity drift during fixed-step master-equation integration.
class IntegrationFailure : public Error {
 public:
  explicit IntegrationFailure(const std::string& what) : Error(ErrorKind::Numerical, what) {}
};

/// Result would overflow.
class RangeError : public Error {
 public:
  explicit RangeError(const std::string& what) : Error(ErrorKind::Numerical, what) {}
};

/// Series has no interior local maximum.
class NoPeakError : public Error {
 public:
  explicit NoPeakError(const std::string& what) : Error(ErrorKind::Numerical, what) {}
};

/// Exit code used by the CLI for an error of the given kind.
int exit_code_for(ErrorKind kind) noexcept;

}  // namespace ler
