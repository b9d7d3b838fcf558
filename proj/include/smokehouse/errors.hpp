#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace smokehouse {

/// Raised when a function argument violates its documented precondition.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A single configuration problem, addressed by dotted path (e.g. `plan.cook_setpoint`).
struct Violation {
  std::string path;
  std::string message;
};

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
  explicit ConfigError(std::vector<Violation> violations);

  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

/// A node temperature became non-finite or left the guard band.
class PlantDiverged : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The steady-state system is singular (some node has no path to ambient).
class NoEquilibrium : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The controller was handed a measurement it cannot act on.
class ControllerFault : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace smokehouse
