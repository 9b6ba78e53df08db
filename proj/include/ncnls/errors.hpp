#pragma once

#include <stdexcept>
#include <string>

namespace ncnls {

/// Invalid user-facing configuration (bad bounds, unknown keys, ...).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Caller broke a precondition (mismatched meshes, wrong state kind).
class ContractViolation : public std::logic_error {
 public:
  explicit ContractViolation(const std::string& what) : std::logic_error(what) {}
};

/// Linear or nonlinear solve failed.
class SolverError : public std::runtime_error {
 public:
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

/// Output directory or report file could not be written or read.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ncnls
