#pragma once

// Independent one-dimensional finite-volume solver for the gas system with
// the multi-exponent pressure law, used to cross-validate the constructed
// states: it evolves their initial data and measures the L1 deviation from
// the analytic fields under grid refinement.
//
// Discretization: (rho, rho u, S) per cell; local Lax-Friedrichs (Rusanov)
// flux for mass and momentum; first-order upwind transport for S (the system
// advects entropy, it does not conserve it); Strang-split momentum source
// rho (F(t) - delta dPhi/dx) with dPhi/dx rebuilt from the cell densities by
// cumulative trapezoid, gauge-anchored to the analytic potential slope at
// the left edge; ghost cells filled from the analytic solution every stage.
// One space dimension only: line states are constant on hyperplanes normal
// to the line direction, so the 1-D section carries all the structure.

#include <limits>
#include <vector>

#include "linesol/exact.hpp"

namespace linesol::fv {

struct Grid1D {
  int n_cells = 0;
  double x_lo = 0.0, x_hi = 0.0;

  // Validating factory: n_cells >= 4, x_lo < x_hi.
  static Grid1D make(int n_cells, double x_lo, double x_hi);

  double dx() const { return (x_hi - x_lo) / n_cells; }
  double center(int i) const { return x_lo + (i + 0.5) * dx(); }
};

struct FVState {
  double t = 0.0;
  std::vector<double> rho, mom, S;  // one entry per cell
};

struct SolverConfig {
  // Courant number; values above 1 are accepted so instability can be
  // demonstrated deliberately, but stable runs need cfl <= 1.
  double cfl = 0.5;
  double t_end = 0.0;
};

struct StepInfo {
  double dt = 0.0;
  // -dt * (mass flux at the right boundary face - at the left face): the
  // exact amount by which the conservative update changes the total mass.
  double mass_inflow = 0.0;
};

struct L1Errors {
  double t = 0.0;
  double rho = 0.0, u = 0.0, S = 0.0;
};

struct RunResult {
  FVState state;
  std::vector<L1Errors> series;  // one record per requested output time
};

// Midpoint (cell-center) sampling of the analytic fields at t = 0.
// The grid image under the phase map must lie inside the validity domain.
FVState init_from_exact(const exact::SolvedSolution& sol, const Grid1D& grid);

// One Strang-split step with dt = min(cfl dx / max(|u| + c), dt_max).
// Throws numerical_error (with cell and time in the message) on negative
// density, non-finite values, or time-step underflow.
StepInfo step(FVState& state, const exact::SolvedSolution& sol,
              const Grid1D& grid, const SolverConfig& config,
              double dt_max = std::numeric_limits<double>::infinity());

// Advance from t = 0 to config.t_end, recording L1 errors at each output
// time (each must lie in [0, t_end]; t_end itself is always recorded last).
RunResult run(const exact::SolvedSolution& sol, const Grid1D& grid,
              const SolverConfig& config,
              const std::vector<double>& output_times = {});

// L1 norms sum_i |q_i - q_exact(t, x_i)| dx for q in {rho, u, S}.
L1Errors compare_l1(const FVState& state, const exact::SolvedSolution& sol,
                    const Grid1D& grid);

}  // namespace linesol::fv
