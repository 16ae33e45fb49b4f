#pragma once

// Pointwise residuals of the governing equations evaluated on an assembled
// state, in two modes:
//   analytic          -- field derivatives expanded through the phase by the
//                        chain rule (catches inconsistent ingredients),
//   finite_difference -- second-order central differences of the evaluated
//                        fields themselves (independent of the chain-rule
//                        algebra, converges to the analytic mode at O(h^2)).
//
// Scalar equations checked (per space axis i where applicable):
//   mass:     rho_t + sum_k u_k rho_xk + rho sum_k (u_k)_xk
//   momentum: rho (u_i_t + sum_k u_k u_i_xk) + P_xi + delta rho Phi_xi
//             - rho F_i
//   entropy:  S_t + sum_k u_k S_xk
//   poisson:  laplacian(Phi) - alpha(N) rho          (delta != 0 only)

#include <span>
#include <string>
#include <vector>

#include "linesol/exact.hpp"

namespace linesol::residual {

enum class Mode { analytic, finite_difference };

double residual_mass(const exact::SolvedSolution& sol, double t,
                     std::span<const double> x, Mode mode, double h = 1e-3);
double residual_momentum(const exact::SolvedSolution& sol, int axis, double t,
                         std::span<const double> x, Mode mode,
                         double h = 1e-3);
// Momentum residual divided by rho, for vacuum-adjacent studies; requires
// rho > 0 at the point.
double residual_momentum_normalized(const exact::SolvedSolution& sol,
                                    int axis, double t,
                                    std::span<const double> x, Mode mode,
                                    double h = 1e-3);
double residual_entropy(const exact::SolvedSolution& sol, double t,
                        std::span<const double> x, Mode mode, double h = 1e-3);
double residual_poisson(const exact::SolvedSolution& sol, double t,
                        std::span<const double> x, Mode mode, double h = 1e-3);

// laplacian(Phi) on its own, exposed for source-versus-field diagnostics.
double laplacian_potential(const exact::SolvedSolution& sol, double t,
                           std::span<const double> x, Mode mode,
                           double h = 1e-3);

struct Norms {
  double max_abs = 0.0;
  double rms = 0.0;
};

struct SweepGrid {
  std::vector<double> t_samples;
  double z_lo = 0.0, z_hi = 0.0;  // phase window scanned at every sample time
  int n_points = 101;
};

struct ResidualReport {
  Mode mode = Mode::analytic;
  double h = 0.0;
  int n_times = 0, n_points = 0;
  bool has_poisson = false;
  Norms mass, momentum, entropy, poisson;
  // Worst offender across every equation and grid point.
  std::string worst_equation;
  double worst_value = 0.0;
  double worst_t = 0.0;
  std::vector<double> worst_x;

  std::string to_text() const;
  std::string to_csv() const;  // flat rows: equation,norm,value
};

// Sweeps the phase window at each sample time; points are placed along the
// line direction through the trajectory so every (t, x) keeps its phase
// inside [z_lo, z_hi].  Empty t_samples yields an all-zero report.
ResidualReport residual_sweep(const exact::SolvedSolution& sol,
                              const SweepGrid& grid, Mode mode,
                              double h = 1e-3);

}  // namespace linesol::residual
