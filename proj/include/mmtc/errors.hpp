#pragma once

#include <stdexcept>
#include <string>

namespace mmtc {

// Invalid configuration or out-of-domain argument.  CLI exit code 1.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A quadrature or solver exhausted its budget.  CLI exit code 2.
class NonConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Two routes that must agree (closed form vs direct summation) diverged.
// CLI exit code 2.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A desk-scale-only operation was asked to run beyond its bounds.
class ScaleError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Equal-reliability solver could not bracket a root.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// File-system problems.  CLI exit code 3.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mmtc
