#pragma once

// Named time-dependent scalar functions used for forcing terms and potential
// gauges.  Restricting to named families keeps scenarios serializable and
// every member smooth enough for the quadrature-built trajectories.

#include <string>
#include <vector>

namespace linesol {

class TimeFunction {
 public:
  enum class Kind { zero, constant, sinusoid, polynomial };

  // Defaults to the zero function.
  TimeFunction() : kind_(Kind::zero) {}

  static TimeFunction zero() { return TimeFunction(); }
  static TimeFunction constant(double value);
  // amplitude * sin(omega * t + phase)
  static TimeFunction sinusoid(double amplitude, double omega, double phase);
  static TimeFunction polynomial(std::vector<double> coefficients);

  double operator()(double t) const;

  Kind kind() const { return kind_; }
  const std::vector<double>& params() const { return params_; }

  // Structurally zero: the zero kind, a zero constant, a zero-amplitude
  // sinusoid or an all-zero polynomial.
  bool is_zero() const;

 private:
  Kind kind_;
  std::vector<double> params_;
};

}  // namespace linesol
