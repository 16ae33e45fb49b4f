#pragma once

#include <limits>
#include <stdexcept>
#include <string>

namespace linesol {

// Malformed input: a scenario file or argument set that fails its contract
// before any mathematics runs.  CLI maps this to exit code 2.
class scenario_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Mathematical precondition failure: the inputs parse but describe a state
// the solution family does not admit (sign-indefinite density, vacuum where
// a method needs pressure > 0, phase outside the positivity domain).
// `where` carries the offending coordinate when one exists.  CLI exit 3.
class precondition_error : public std::runtime_error {
 public:
  explicit precondition_error(
      const std::string& msg,
      double where = std::numeric_limits<double>::quiet_NaN())
      : std::runtime_error(msg), where(where) {}
  double where;
};

// Numerical breakdown: a method ran and failed (quadrature refinement cap,
// non-finite ODE state, finite-volume blow-up).  `best_estimate` carries the
// last usable value when the failing method has one.  CLI exit 4.
class numerical_error : public std::runtime_error {
 public:
  explicit numerical_error(
      const std::string& msg,
      double best_estimate = std::numeric_limits<double>::quiet_NaN())
      : std::runtime_error(msg), best_estimate(best_estimate) {}
  double best_estimate;
};

}  // namespace linesol
