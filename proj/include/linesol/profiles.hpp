#pragma once

// Shape-function families used for the density / potential profile f(z).
// Every analytic family exposes exact derivatives through order 3; tabulated
// profiles interpolate with a natural cubic spline and stop at order 2.

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace linesol::profiles {

struct Constant {
  double value;
};

struct Gaussian {
  double amplitude, center, width;
};

struct Polynomial {
  std::vector<double> coefficients;  // ascending powers of z
};

struct SechSquared {
  double amplitude, center, width;
};

struct CompactBump {
  double amplitude, center, radius;  // A*exp(-1/(1-((z-c)/r)^2)) inside
};

struct Tabulated {
  std::vector<double> z;       // strictly increasing knots, >= 4 of them
  std::vector<double> values;
  std::vector<double> second;  // natural-spline second derivatives at knots
};

using Family = std::variant<Constant, Gaussian, Polynomial, SechSquared,
                            CompactBump, Tabulated>;

enum class SignRequirement {
  nonnegative,        // f(z) >= 0
  positive,           // f(z) > 0
  convex,             // f''(z) >= 0
};

struct SignReport {
  bool passed = true;
  SignRequirement requirement;
  std::optional<double> first_violation;  // leftmost sampled violation
};

class Profile {
 public:
  static Profile constant(double value);
  static Profile gaussian(double amplitude, double center, double width);
  static Profile polynomial(std::vector<double> coefficients);
  static Profile sech_squared(double amplitude, double center, double width);
  static Profile compact_bump(double amplitude, double center, double radius);
  static Profile tabulated(std::vector<double> z, std::vector<double> values);
  // Two-column CSV (z,value); '#' comments, blank lines and one non-numeric
  // header line are tolerated.
  static Profile tabulated_from_csv(const std::string& path);

  // Derivative of the given order (0 = the value itself).  Analytic families
  // support orders 0..3; tabulated supports 0..2 and refuses evaluation
  // outside its knot range (no extrapolation).
  double eval(double z, int order = 0) const;
  double operator()(double z) const { return eval(z, 0); }

  int max_order() const;         // 3 for analytic families, 2 for tabulated
  std::string family_name() const;
  const Family& family() const { return family_; }

  // Samples the requirement on a uniform grid over [z_lo, z_hi] (plus the
  // family's critical points that fall inside) and reports the leftmost
  // violation if one exists.
  SignReport check_sign(double z_lo, double z_hi, SignRequirement req,
                        int n_samples = 4097) const;

 private:
  explicit Profile(Family f) : family_(std::move(f)) {}
  Family family_;
};

}  // namespace linesol::profiles
