#include "linesol/numerics.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "linesol/errors.hpp"

namespace linesol::numerics {

double gamma_half(double x) {
  const double two_x = 2.0 * x;
  const long long k = std::llround(two_x);
  if (k < 1 || std::abs(two_x - static_cast<double>(k)) > 1e-9) {
    throw std::invalid_argument(
        "gamma_half: argument must be a positive half-integer, got " +
        std::to_string(x));
  }
  // Walk the recurrence Gamma(s+1) = s*Gamma(s) up from Gamma(1/2) = sqrt(pi)
  // (k odd) or Gamma(1) = 1 (k even); every factor is exactly representable.
  double value = (k % 2 == 1) ? std::sqrt(M_PI) : 1.0;
  for (long long m = (k % 2 == 1) ? 1 : 2; m < k; m += 2) {
    value *= static_cast<double>(m) / 2.0;
  }
  return value;
}

double alpha(int n_dim) {
  if (n_dim < 1) {
    throw std::invalid_argument("alpha: dimension must be >= 1, got " +
                                std::to_string(n_dim));
  }
  if (n_dim == 1) return 2.0;
  if (n_dim == 2) return 2.0 * M_PI;
  const double n = static_cast<double>(n_dim);
  return n * (n - 2.0) * std::pow(M_PI, n / 2.0) / gamma_half(n / 2.0 + 1.0);
}

namespace {

struct SimpsonState {
  const std::function<double(double)>& fn;
  int max_depth;
  long evaluations = 0;
  double error_estimate = 0.0;

  double eval(double x) {
    ++evaluations;
    const double v = fn(x);
    if (!std::isfinite(v)) {
      throw numerical_error("adaptive_quad: integrand is not finite at x = " +
                            std::to_string(x));
    }
    return v;
  }

  // Recursive halving on one panel.  whole = Simpson estimate on [a, b]
  // using the already-evaluated fa, fm, fb.
  double refine(double a, double b, double fa, double fm, double fb,
                double whole, double tol, int depth, double acc) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = eval(lm);
    const double frm = eval(rm);
    const double h6 = (b - a) / 12.0;
    const double left = h6 * (fa + 4.0 * flm + fm);
    const double right = h6 * (fm + 4.0 * frm + fb);
    const double split = left + right;
    const double diff = split - whole;
    if (std::abs(diff) <= 15.0 * tol || depth >= max_depth) {
      if (std::abs(diff) > 15.0 * tol) {
        throw numerical_error(
            "adaptive_quad: refinement cap (" + std::to_string(max_depth) +
                " levels) reached on [" + std::to_string(a) + ", " +
                std::to_string(b) + "]; best estimate carried",
            acc + split + diff / 15.0);
      }
      error_estimate += std::abs(diff) / 15.0;
      return split + diff / 15.0;
    }
    const double l =
        refine(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1, acc);
    return l + refine(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1, acc + l);
  }
};

}  // namespace

QuadratureResult adaptive_quad(const std::function<double(double)>& fn,
                               double a, double b, double tol, int max_depth) {
  if (!(tol > 0.0)) {
    throw std::invalid_argument("adaptive_quad: tolerance must be > 0");
  }
  if (max_depth < 1) {
    throw std::invalid_argument("adaptive_quad: max_depth must be >= 1");
  }
  if (a == b) return {0.0, 0.0, 0};
  double sign = 1.0;
  if (a > b) {
    std::swap(a, b);
    sign = -1.0;
  }
  SimpsonState st{fn, max_depth};
  const double fa = st.eval(a);
  const double fm = st.eval(0.5 * (a + b));
  const double fb = st.eval(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double value = st.refine(a, b, fa, fm, fb, whole, tol, 0, 0.0);
  return {sign * value, st.error_estimate, st.evaluations};
}

double gauss7(const std::function<double(double)>& fn, double a, double b) {
  // 7-point Gauss-Legendre nodes and weights on [-1, 1].
  static constexpr double kNodes[7] = {
      -0.9491079123427585245261897, -0.7415311855993944398638648,
      -0.4058451513773971669066064, 0.0,
      0.4058451513773971669066064,  0.7415311855993944398638648,
      0.9491079123427585245261897};
  static constexpr double kWeights[7] = {
      0.1294849661688696932706114, 0.2797053914892766679014678,
      0.3818300505051189449503698, 0.4179591836734693877551020,
      0.3818300505051189449503698, 0.2797053914892766679014678,
      0.1294849661688696932706114};
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (int i = 0; i < 7; ++i) {
    sum += kWeights[i] * fn(mid + half * kNodes[i]);
  }
  return half * sum;
}

OdePath rk4_solve(
    const std::function<void(double, std::span<const double>,
                             std::span<double>)>& deriv,
    std::vector<double> y0, double t0, double t1, double step) {
  if (!(step > 0.0)) {
    throw std::invalid_argument("rk4_solve: step must be > 0");
  }
  const std::size_t n = y0.size();
  OdePath path;
  path.t.push_back(t0);
  path.y.push_back(y0);
  if (t0 == t1) return path;

  const double dir = (t1 > t0) ? 1.0 : -1.0;
  std::vector<double> k1(n), k2(n), k3(n), k4(n), tmp(n);
  std::vector<double> y = std::move(y0);
  double t = t0;
  while (dir * (t1 - t) > 0.0) {
    const double h = dir * std::min(step, dir * (t1 - t));
    deriv(t, y, k1);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
    deriv(t + 0.5 * h, tmp, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
    deriv(t + 0.5 * h, tmp, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * k3[i];
    deriv(t + h, tmp, k4);
    bool finite = true;
    for (std::size_t i = 0; i < n; ++i) {
      y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
      finite = finite && std::isfinite(y[i]);
    }
    t = (dir * (t1 - t) <= h * dir) ? t1 : t + h;
    if (!finite) {
      throw numerical_error("rk4_solve: state became non-finite at t = " +
                            std::to_string(t));
    }
    path.t.push_back(t);
    path.y.push_back(y);
  }
  return path;
}

double central_diff(const std::function<double(double)>& fn, double x,
                    double h, int order) {
  if (!(h > 0.0)) {
    throw std::invalid_argument("central_diff: h must be > 0");
  }
  switch (order) {
    case 1:
      return (fn(x + h) - fn(x - h)) / (2.0 * h);
    case 2:
      return (fn(x + h) - 2.0 * fn(x) + fn(x - h)) / (h * h);
    default:
      throw std::invalid_argument("central_diff: unsupported order " +
                                  std::to_string(order));
  }
}

}  // namespace linesol::numerics
