#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace hypcon {

// Argument outside the domain an operation is defined on (|z| >= 1, endpoint
// outside J, non-finite component, ...).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The operation is well posed but cannot be evaluated at the requested point,
// e.g. a finite-difference stencil leaves the domain or a family is singular.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double estimate)
      : std::runtime_error(what), estimate_(estimate) {}

  /// Achieved error estimate at the point the procedure gave up.
  double estimate() const noexcept { return estimate_; }

 private:
  double estimate_;
};

// Suite configuration problems, collected so that all of them can be reported at once.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> errors);

  const std::vector<std::string>& errors() const noexcept { return errors_; }

 private:
  std::vector<std::string> errors_;
};

}  // namespace hypcon
