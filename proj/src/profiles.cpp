#include "linesol/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "linesol/errors.hpp"

namespace linesol::profiles {

namespace {

void require_order(int order, int max) {
  if (order < 0 || order > max) {
    throw std::invalid_argument("Profile: unsupported derivative order " +
                                std::to_string(order) + " (max " +
                                std::to_string(max) + ")");
  }
}

double eval_constant(const Constant& p, double, int order) {
  return order == 0 ? p.value : 0.0;
}

double eval_gaussian(const Gaussian& p, double z, int order) {
  const double y = (z - p.center) / p.width;
  const double base = p.amplitude * std::exp(-y * y);
  switch (order) {
    case 0: return base;
    case 1: return -2.0 * y * base / p.width;
    case 2: return (4.0 * y * y - 2.0) * base / (p.width * p.width);
    default:
      return (-8.0 * y * y * y + 12.0 * y) * base /
             (p.width * p.width * p.width);
  }
}

double eval_polynomial(const Polynomial& p, double z, int order) {
  // Horner on the coefficient tail, with the falling-factorial prefactor of
  // the order-th derivative folded in.
  const auto& c = p.coefficients;
  const int n = static_cast<int>(c.size());
  if (order >= n) return 0.0;
  double acc = 0.0;
  for (int j = n - 1; j >= order; --j) {
    double fall = 1.0;
    for (int k = 0; k < order; ++k) fall *= static_cast<double>(j - k);
    acc = acc * z + fall * c[j];
  }
  return acc;
}

double eval_sech_squared(const SechSquared& p, double z, int order) {
  const double y = (z - p.center) / p.width;
  const double s = 1.0 / std::cosh(y);
  const double s2 = s * s;
  const double tau = std::tanh(y);
  const double A = p.amplitude;
  switch (order) {
    case 0: return A * s2;
    case 1: return -2.0 * A * s2 * tau / p.width;
    case 2:
      return 2.0 * A * s2 * (2.0 * tau * tau - s2) / (p.width * p.width);
    default:
      return 8.0 * A * s2 * tau * (2.0 * s2 - tau * tau) /
             (p.width * p.width * p.width);
  }
}

double eval_compact_bump(const CompactBump& p, double z, int order) {
  const double y = (z - p.center) / p.radius;
  const double u = 1.0 - y * y;
  if (!(u > 0.0)) return 0.0;  // identically zero outside the open support
  const double core = p.amplitude * std::exp(-1.0 / u);
  if (order == 0) return core;
  const double u2 = u * u;
  const double w1 = -2.0 * y / u2;
  if (order == 1) return core * w1 / p.radius;
  const double u3 = u2 * u;
  const double w2 = -2.0 / u2 - 8.0 * y * y / u3;
  if (order == 2) return core * (w2 + w1 * w1) / (p.radius * p.radius);
  const double w3 = -24.0 * y / u3 - 48.0 * y * y * y / (u3 * u);
  return core * (w3 + 3.0 * w1 * w2 + w1 * w1 * w1) /
         (p.radius * p.radius * p.radius);
}

double eval_tabulated(const Tabulated& p, double z, int order) {
  if (z < p.z.front() || z > p.z.back()) {
    throw precondition_error(
        "Profile: tabulated evaluation outside knot range at z = " +
            std::to_string(z),
        z);
  }
  auto it = std::upper_bound(p.z.begin(), p.z.end(), z);
  std::size_t i = (it == p.z.begin()) ? 0 : (it - p.z.begin() - 1);
  if (i + 1 >= p.z.size()) i = p.z.size() - 2;
  const double h = p.z[i + 1] - p.z[i];
  const double A = (p.z[i + 1] - z) / h;
  const double B = (z - p.z[i]) / h;
  const double Ma = p.second[i];
  const double Mb = p.second[i + 1];
  switch (order) {
    case 0:
      return A * p.values[i] + B * p.values[i + 1] +
             ((A * A * A - A) * Ma + (B * B * B - B) * Mb) * h * h / 6.0;
    case 1:
      return (p.values[i + 1] - p.values[i]) / h -
             (3.0 * A * A - 1.0) * h * Ma / 6.0 +
             (3.0 * B * B - 1.0) * h * Mb / 6.0;
    default:
      return A * Ma + B * Mb;
  }
}

}  // namespace

Profile Profile::constant(double value) { return Profile(Constant{value}); }

Profile Profile::gaussian(double amplitude, double center, double width) {
  if (!(width > 0.0)) {
    throw std::invalid_argument("Profile: gaussian width must be > 0");
  }
  return Profile(Gaussian{amplitude, center, width});
}

Profile Profile::polynomial(std::vector<double> coefficients) {
  if (coefficients.empty()) {
    throw std::invalid_argument(
        "Profile: polynomial needs at least one coefficient");
  }
  return Profile(Polynomial{std::move(coefficients)});
}

Profile Profile::sech_squared(double amplitude, double center, double width) {
  if (!(width > 0.0)) {
    throw std::invalid_argument("Profile: sech_squared width must be > 0");
  }
  return Profile(SechSquared{amplitude, center, width});
}

Profile Profile::compact_bump(double amplitude, double center, double radius) {
  if (!(radius > 0.0)) {
    throw std::invalid_argument("Profile: compact_bump radius must be > 0");
  }
  return Profile(CompactBump{amplitude, center, radius});
}

Profile Profile::tabulated(std::vector<double> z, std::vector<double> values) {
  if (z.size() < 4 || z.size() != values.size()) {
    throw scenario_error(
        "Profile: tabulated needs >= 4 knots with matching values");
  }
  for (std::size_t i = 1; i < z.size(); ++i) {
    if (!(z[i] > z[i - 1])) {
      throw scenario_error("Profile: tabulated knots must strictly increase");
    }
  }
  // Natural cubic spline: solve the tridiagonal system for the knot second
  // derivatives (Thomas algorithm), M_0 = M_{n-1} = 0.
  const std::size_t n = z.size();
  std::vector<double> second(n, 0.0), diag(n, 0.0), rhs(n, 0.0),
      upper(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double hl = z[i] - z[i - 1];
    const double hr = z[i + 1] - z[i];
    diag[i] = (hl + hr) / 3.0;
    upper[i] = hr / 6.0;
    rhs[i] = (values[i + 1] - values[i]) / hr -
             (values[i] - values[i - 1]) / hl;
  }
  for (std::size_t i = 2; i + 1 < n; ++i) {
    const double lower = (z[i] - z[i - 1]) / 6.0;
    const double m = lower / diag[i - 1];
    diag[i] -= m * upper[i - 1];
    rhs[i] -= m * rhs[i - 1];
  }
  for (std::size_t i = n - 2; i >= 1; --i) {
    second[i] = (rhs[i] - upper[i] * second[i + 1]) / diag[i];
  }
  return Profile(Tabulated{std::move(z), std::move(values),
                           std::move(second)});
}

Profile Profile::tabulated_from_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw scenario_error("Profile: cannot open CSV file '" + path + "'");
  }
  std::vector<double> z, v;
  std::string line;
  bool first_line = true;
  while (std::getline(in, line)) {
    const auto start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    std::string body = line.substr(start);
    std::replace(body.begin(), body.end(), ',', ' ');
    std::istringstream row(body);
    double a, b;
    if (!(row >> a >> b)) {
      if (first_line) {  // tolerate a single header row
        first_line = false;
        continue;
      }
      throw scenario_error("Profile: malformed CSV row '" + line + "' in '" +
                           path + "'");
    }
    first_line = false;
    z.push_back(a);
    v.push_back(b);
  }
  return tabulated(std::move(z), std::move(v));
}

double Profile::eval(double z, int order) const {
  require_order(order, max_order());
  return std::visit(
      [&](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, Constant>) {
          return eval_constant(p, z, order);
        } else if constexpr (std::is_same_v<T, Gaussian>) {
          return eval_gaussian(p, z, order);
        } else if constexpr (std::is_same_v<T, Polynomial>) {
          return eval_polynomial(p, z, order);
        } else if constexpr (std::is_same_v<T, SechSquared>) {
          return eval_sech_squared(p, z, order);
        } else if constexpr (std::is_same_v<T, CompactBump>) {
          return eval_compact_bump(p, z, order);
        } else {
          return eval_tabulated(p, z, order);
        }
      },
      family_);
}

int Profile::max_order() const {
  return std::holds_alternative<Tabulated>(family_) ? 2 : 3;
}

std::string Profile::family_name() const {
  return std::visit(
      [](const auto& p) -> std::string {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, Constant>) return "constant";
        else if constexpr (std::is_same_v<T, Gaussian>) return "gaussian";
        else if constexpr (std::is_same_v<T, Polynomial>) return "polynomial";
        else if constexpr (std::is_same_v<T, SechSquared>)
          return "sech_squared";
        else if constexpr (std::is_same_v<T, CompactBump>)
          return "compact_bump";
        else return "tabulated";
        (void)p;
      },
      family_);
}

SignReport Profile::check_sign(double z_lo, double z_hi, SignRequirement req,
                               int n_samples) const {
  if (!(z_hi > z_lo)) {
    throw std::invalid_argument("check_sign: interval must satisfy lo < hi");
  }
  if (n_samples < 2) {
    throw std::invalid_argument("check_sign: need at least 2 samples");
  }
  std::vector<double> points;
  points.reserve(static_cast<std::size_t>(n_samples) + 3);
  for (int i = 0; i < n_samples; ++i) {
    points.push_back(z_lo + (z_hi - z_lo) * i /
                     static_cast<double>(n_samples - 1));
  }
  // Family-specific critical points (extrema / support edges).
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, Gaussian> ||
                      std::is_same_v<T, SechSquared>) {
          points.push_back(p.center);
        } else if constexpr (std::is_same_v<T, CompactBump>) {
          points.push_back(p.center);
          points.push_back(p.center - p.radius);
          points.push_back(p.center + p.radius);
        } else if constexpr (std::is_same_v<T, Tabulated>) {
          for (double zk : p.z) points.push_back(zk);
        }
      },
      family_);
  std::sort(points.begin(), points.end());

  const int order = (req == SignRequirement::convex) ? 2 : 0;
  SignReport report;
  report.requirement = req;
  for (double zp : points) {
    if (zp < z_lo || zp > z_hi) continue;
    const double v = eval(zp, order);
    const bool bad = (req == SignRequirement::positive) ? !(v > 0.0)
                                                        : (v < 0.0);
    if (bad) {
      report.passed = false;
      report.first_violation = zp;
      break;
    }
  }
  return report;
}

}  // namespace linesol::profiles
