#include "linesol/time_function.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace linesol {

TimeFunction TimeFunction::constant(double value) {
  TimeFunction f;
  f.kind_ = Kind::constant;
  f.params_ = {value};
  return f;
}

TimeFunction TimeFunction::sinusoid(double amplitude, double omega,
                                    double phase) {
  if (!(std::isfinite(amplitude) && std::isfinite(omega) &&
        std::isfinite(phase))) {
    throw std::invalid_argument("TimeFunction: sinusoid parameters not finite");
  }
  TimeFunction f;
  f.kind_ = Kind::sinusoid;
  f.params_ = {amplitude, omega, phase};
  return f;
}

TimeFunction TimeFunction::polynomial(std::vector<double> coefficients) {
  if (coefficients.empty()) {
    throw std::invalid_argument(
        "TimeFunction: polynomial needs at least one coefficient");
  }
  TimeFunction f;
  f.kind_ = Kind::polynomial;
  f.params_ = std::move(coefficients);
  return f;
}

double TimeFunction::operator()(double t) const {
  switch (kind_) {
    case Kind::zero:
      return 0.0;
    case Kind::constant:
      return params_[0];
    case Kind::sinusoid:
      return params_[0] * std::sin(params_[1] * t + params_[2]);
    case Kind::polynomial: {
      double acc = 0.0;
      for (auto it = params_.rbegin(); it != params_.rend(); ++it) {
        acc = acc * t + *it;
      }
      return acc;
    }
  }
  return 0.0;
}

bool TimeFunction::is_zero() const {
  switch (kind_) {
    case Kind::zero:
      return true;
    case Kind::constant:
      return params_[0] == 0.0;
    case Kind::sinusoid:
      return params_[0] == 0.0;
    case Kind::polynomial:
      return std::all_of(params_.begin(), params_.end(),
                         [](double c) { return c == 0.0; });
  }
  return false;
}

}  // namespace linesol
