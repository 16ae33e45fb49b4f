#pragma once

// Construction of exact line-form gas states.
//
// All fields depend on space only through the scalar phase
//     z = sum_i C_i * (x_i - a_i(t)),
// the velocity is spatially uniform, u_i(t) = da_i/dt, and entropy enters as
// S = ln g(z).  The density is rho = f(z) for a plain gas (delta = 0) or
// rho = (sum_i C_i^2 / alpha(N)) * f''(z) for a self-interacting gas
// (delta = +-1), in which case f is the shape of the interaction potential
// Phi = f(z) + sum_i d_i(t) x_i with linear gauge terms d_i.
//
// Such a state solves the full system exactly provided
//   (1) the entropy factor obeys d/dz [ g(z) * Ptilde(rho(z)) ]
//         = -rho(z) * (xi + delta * f'(z)),
//   (2) the trajectory obeys a_i'' = F_i(t) + C_i * xi - delta * d_i(t).
// This module solves (1) by first integral or by an ODE march, solves (2) by
// cached cumulative quadrature (or RK4 when velocity damping is added), and
// evaluates the assembled state.

#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "linesol/eos.hpp"
#include "linesol/profiles.hpp"
#include "linesol/time_function.hpp"

namespace linesol::exact {

struct LineSolutionSpec {
  int dim = 1;                       // number of space dimensions N >= 1
  std::vector<double> line_coeffs;   // C_i with sum C_i^2 > 0
  double xi = 0.0;                   // entropy drive strength
  int delta = 0;                     // 0, +1 (attractive) or -1 (repulsive)
  eos::PressureLaw law;              // empty until set; validate() rejects
  profiles::Profile profile =
      profiles::Profile::constant(1.0);  // f: density shape (delta = 0) or
                                         // potential shape (delta = +-1)
  double z0 = 0.0;                   // entropy anchor location
  double g0 = 1.0;                   // g(z0) = g0 > 0
  double z_lo = -1.0, z_hi = 1.0;    // working phase window
  std::vector<TimeFunction> forces;  // F_i(t); empty means all zero
  std::vector<TimeFunction> gauges;  // d_i(t); must be zero when delta == 0
  std::vector<double> a0, a1;        // a_i(0) and a_i'(0); empty means zero

  double sum_c2() const;
  // Throws scenario_error on any structural violation (dimension mismatch,
  // sum C_i^2 == 0, g0 <= 0, z0 outside the window, gauges with delta == 0).
  void validate() const;
};

enum class EntropyMethod { first_integral, ode };
enum class TrajectoryMethod { quadrature, damped_rk4, external };

// Entropy factor g over the phase window, stored as dense nodal samples
// (g_k, g'_k) frozen at solve time and evaluated with cubic Hermite
// interpolation.  The node derivatives come from the solving constraint, so
// perturbing the stored samples produces a state that genuinely violates the
// momentum balance -- which is what the residual checker must detect.
class EntropyProfile {
 public:
  EntropyProfile() = default;

  // z strictly increasing, all arrays the same length >= 2; z_anchor is the
  // point the positivity scan grows outward from (the solve anchor z0).
  static EntropyProfile from_samples(std::vector<double> z,
                                     std::vector<double> g,
                                     std::vector<double> dg,
                                     EntropyMethod method, double z_anchor);

  double g(double z) const;
  double dg(double z) const;

  double z_lo() const { return z_.front(); }
  double z_hi() const { return z_.back(); }
  // Maximal subinterval around the anchor where g > 0.
  std::pair<double, double> positivity_domain() const { return {pos_lo_, pos_hi_}; }
  EntropyMethod method() const { return method_; }

  const std::vector<double>& nodes() const { return z_; }
  const std::vector<double>& g_nodes() const { return g_; }
  const std::vector<double>& dg_nodes() const { return dg_; }

  // Copy with every stored sample (value and derivative) multiplied by
  // factor; used by corruption-sensitivity checks.
  EntropyProfile scaled(double factor) const;

 private:
  std::vector<double> z_, g_, dg_;
  double pos_lo_ = 0.0, pos_hi_ = 0.0;
  double anchor_ = 0.0;
  EntropyMethod method_ = EntropyMethod::first_integral;
  std::size_t locate(double z) const;
  void recompute_positivity();
};

struct DampingTerm {
  double beta;  // strength, >= 0
  double p;     // velocity exponent, > 0; |u|^(p-1) u_i
};

// Particle-path component a(t) with its velocity and acceleration.
class Trajectory {
 public:
  Trajectory() = default;

  int dim() const { return dim_; }
  double t_lo() const { return t_lo_; }
  double t_hi() const { return t_hi_; }
  TrajectoryMethod method() const { return method_; }

  double position(int axis, double t) const;
  double velocity(int axis, double t) const;
  double acceleration(int axis, double t) const;
  std::vector<double> position(double t) const;
  std::vector<double> velocity(double t) const;
  std::vector<double> acceleration(double t) const;

  // Assemble from externally supplied callables (testing and corruption
  // studies).  Each callable maps (axis, t) to a value.
  using AxisFn = std::function<double(int, double)>;
  static Trajectory from_functions(int dim, double t_lo, double t_hi,
                                   AxisFn pos, AxisFn vel, AxisFn acc);

 private:
  friend Trajectory solve_trajectory(const LineSolutionSpec&, double, double);
  friend Trajectory solve_trajectory_damped(const LineSolutionSpec&,
                                            const std::vector<DampingTerm>&,
                                            double, double);

  void require_inside(double t) const;

  int dim_ = 0;
  double t_lo_ = 0.0, t_hi_ = 0.0;
  TrajectoryMethod method_ = TrajectoryMethod::external;

  // quadrature method: a_i(t) = a0_i + a1_i t + C_i xi t^2/2 + H_i(t), where
  // H is the double antiderivative (from 0) of w_i = F_i - delta d_i, held
  // as cumulative Gauss-Legendre tables over a uniform time grid.
  std::vector<double> grid_;                  // time nodes
  std::vector<std::vector<double>> w_nodes_;  // per axis: nodal single integral
  std::vector<std::vector<double>> ww_nodes_; // per axis: nodal double integral
  std::vector<double> g_at0_, h_at0_;         // tables evaluated at t = 0
  std::vector<double> a0_, a1_, cxi_;
  std::vector<std::function<double(double)>> w_fns_;  // F_i - delta d_i
  double raw_single(int axis, double t) const;
  double raw_double(int axis, double t) const;

  // damped_rk4 method: Hermite data on the integrator's own step grid.
  std::vector<double> steps_;
  std::vector<std::vector<double>> pos_nodes_, vel_nodes_, acc_nodes_;

  // external method
  AxisFn ext_pos_, ext_vel_, ext_acc_;
};

// Phase z at (t, x); x must have spec.dim entries.
double phase(const LineSolutionSpec& spec, const Trajectory& traj, double t,
             std::span<const double> x);

// Density as a function of phase, and its z-derivatives (order 0..1).
double density_of_z(const LineSolutionSpec& spec, double z);
double density_deriv(const LineSolutionSpec& spec, double z, int order);

// Solve the entropy constraint by the closed first integral
//   g(z) = [ g0 Ptilde(rho(z0)) - int_{z0}^{z} rho (xi + delta f') ds ]
//          / Ptilde(rho(z)),
// sampled on n_nodes uniform nodes.  Requires Ptilde(rho) > 0 on the window.
EntropyProfile solve_entropy_first_integral(const LineSolutionSpec& spec,
                                            int n_nodes = 4097);

// Solve the same constraint as an ODE march from the anchor in both
// directions with fixed-step RK4:
//   g' = -[ rho (xi + delta f') + g Ptilde'(rho) rho' ] / Ptilde(rho).
// A branch is truncated where g crosses zero.  step <= 0 selects
// (z_hi - z_lo)/4096.
EntropyProfile solve_entropy_ode(const LineSolutionSpec& spec,
                                 double step = 0.0);

// Trajectory with a_i'' = F_i + C_i xi - delta d_i, built from cached
// cumulative quadrature of the named time functions over [t_lo, t_hi]
// (t_lo <= 0 <= t_hi required so the initial conditions anchor at 0).
Trajectory solve_trajectory(const LineSolutionSpec& spec, double t_lo,
                            double t_hi);

// Same dynamics plus velocity damping
//   a_i'' = F_i + C_i xi - delta d_i - sum_l beta_l |u|^(p_l - 1) u_i,
// integrated with fixed-step RK4 on [0, t_hi].  Any p_l < 1 with zero
// initial velocity is rejected.
Trajectory solve_trajectory_damped(const LineSolutionSpec& spec,
                                   const std::vector<DampingTerm>& damping,
                                   double t_hi, double step = 1e-3);

// Interaction potential Phi(t, x) = f(z) + sum_i d_i(t) x_i.  Only defined
// for delta != 0.
double build_potential(const LineSolutionSpec& spec, const Trajectory& traj,
                       double t, std::span<const double> x);

struct FieldState {
  double rho = 0.0;
  std::vector<double> u;
  double S = 0.0;
  double P = 0.0;
  std::optional<double> Phi;  // present iff delta != 0
};

struct SolvedSolution {
  LineSolutionSpec spec;
  EntropyProfile entropy;
  Trajectory trajectory;

  // Full state at (t, x).  The phase must land inside the entropy positivity
  // domain and the density must be nonnegative there.
  FieldState evaluate(double t, std::span<const double> x) const;
};

// Total mass of a one-dimensional state: integral of rho over the x-image of
// the phase window, evaluated as (1/|C_1|) int rho(z) dz.  Independent of t
// by construction (the window just translates); t is accepted for symmetry
// with the field accessors.
double mass_1d(const SolvedSolution& solution, double t,
               double quad_tol = 1e-11);

struct SolveOptions {
  int entropy_nodes = 4097;
  double ode_step = 0.0;        // auto
  bool entropy_by_ode = false;  // default: first integral
  double t_lo = -0.5;
  double t_hi = 2.5;
  std::optional<std::vector<DampingTerm>> damping;
  double trajectory_step = 1e-3;  // only used when damping is present
};

// Validate, check profile sign requirements, and assemble a full solution.
SolvedSolution solve(const LineSolutionSpec& spec,
                     const SolveOptions& options = {});

}  // namespace linesol::exact
