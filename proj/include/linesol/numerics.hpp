#pragma once

// Small numerical kernels shared by the analytical-solution builder, the
// residual checker and the finite-volume solver: half-integer gamma values,
// the dimensional Poisson coupling constant, adaptive Simpson quadrature,
// a fixed-step RK4 integrator and central finite differences.

#include <functional>
#include <span>
#include <vector>

namespace linesol::numerics {

// Gamma function restricted to positive half-integer arguments (x = k/2 for
// integer k >= 1), evaluated exactly via the recurrence from Gamma(1/2) and
// Gamma(1).  Throws std::invalid_argument for any other x.
double gamma_half(double x);

// Coupling constant of the Poisson equation in n space dimensions:
//   alpha(1) = 2, alpha(2) = 2*pi,
//   alpha(n) = n*(n-2)*pi^(n/2) / gamma_half(n/2 + 1) for n >= 3.
// Throws std::invalid_argument for n < 1.
double alpha(int n_dim);

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;  // accumulated Richardson estimate, >= 0
  long evaluations = 0;         // number of integrand evaluations
};

// Adaptive Simpson quadrature of fn over [a, b] to absolute tolerance tol.
// a > b is allowed (integral acquires the usual sign flip); a == b yields 0.
// Each accepted panel satisfies |S2 - S1| <= 15 * local tolerance and
// contributes the Richardson correction (S2 - S1)/15.  Panels that still
// disagree after max_depth halvings raise numerical_error carrying the best
// estimate so far; non-finite integrand values raise numerical_error too.
QuadratureResult adaptive_quad(const std::function<double(double)>& fn,
                               double a, double b, double tol,
                               int max_depth = 60);

// Fixed 7-point Gauss-Legendre quadrature of fn over [a, b].  Exact for
// polynomials of degree <= 13; used for cumulative antiderivative tables
// where adaptive subdivision is unnecessary.
double gauss7(const std::function<double(double)>& fn, double a, double b);

struct OdePath {
  std::vector<double> t;                // step boundaries, t.front() == t0
  std::vector<std::vector<double>> y;   // state sample per entry of t
};

// Classic fixed-step fourth-order Runge-Kutta for y' = f(t, y) from t0 to t1
// (either direction; the final step is shortened to land on t1 exactly).
// deriv writes dy/dt into its third argument.  The returned path contains
// every accepted step including both endpoints.  A non-finite state raises
// numerical_error naming the time reached; step must be > 0.
OdePath rk4_solve(
    const std::function<void(double, std::span<const double>,
                             std::span<double>)>& deriv,
    std::vector<double> y0, double t0, double t1, double step);

// Central finite differences: order 1 -> (f(x+h) - f(x-h)) / (2h),
// order 2 -> (f(x+h) - 2 f(x) + f(x-h)) / h^2.  Both are O(h^2) accurate.
// Throws std::invalid_argument for other orders or h <= 0.
double central_diff(const std::function<double(double)>& fn, double x,
                    double h, int order);

}  // namespace linesol::numerics
