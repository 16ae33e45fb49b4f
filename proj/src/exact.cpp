#include "linesol/exact.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "linesol/errors.hpp"
#include "linesol/numerics.hpp"

namespace linesol::exact {

namespace {

// Compensated (Kahan) accumulator for long prefix sums.
struct Kahan {
  double sum = 0.0, carry = 0.0;
  void add(double v) {
    const double y = v - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

// Cubic Hermite on [za, zb] with values (ya, yb) and slopes (da, db).
// Incremental arrangement of the cubic Hermite basis: when both node values
// coincide and both slopes vanish it reproduces the constant bitwise, which
// downstream exactness checks (steady trivial states) rely on.
double hermite_value(double z, double za, double zb, double ya, double yb,
                     double da, double db) {
  const double h = zb - za;
  const double s = (z - za) / h;
  const double oms = 1.0 - s;
  return ya + s * s * (3.0 - 2.0 * s) * (yb - ya) +
         h * s * oms * (oms * da - s * db);
}

double hermite_slope(double z, double za, double zb, double ya, double yb,
                     double da, double db) {
  const double h = zb - za;
  const double s = (z - za) / h;
  const double oms = 1.0 - s;
  return 6.0 * s * oms * (yb - ya) / h + da * oms * (1.0 - 3.0 * s) +
         db * s * (3.0 * s - 2.0);
}

double value_or_zero(const std::vector<TimeFunction>& fns, int axis,
                     double t) {
  return fns.empty() ? 0.0 : fns[static_cast<std::size_t>(axis)](t);
}

double entry_or_zero(const std::vector<double>& v, int axis) {
  return v.empty() ? 0.0 : v[static_cast<std::size_t>(axis)];
}

}  // namespace

// ---------------------------------------------------------------------------
// LineSolutionSpec

double LineSolutionSpec::sum_c2() const {
  double s = 0.0;
  for (double c : line_coeffs) s += c * c;
  return s;
}

void LineSolutionSpec::validate() const {
  if (dim < 1) {
    throw scenario_error("spec: dim must be >= 1");
  }
  if (line_coeffs.size() != static_cast<std::size_t>(dim)) {
    throw scenario_error("spec: line_coeffs must have exactly dim entries");
  }
  if (!(sum_c2() > 0.0)) {
    throw scenario_error("spec: sum of squared line coefficients must be > 0");
  }
  if (delta != -1 && delta != 0 && delta != 1) {
    throw scenario_error("spec: delta must be -1, 0 or +1");
  }
  if (!(g0 > 0.0)) {
    throw scenario_error(
        "spec: entropy anchor g0 must be positive (the construction needs "
        "g(z) > 0 so S = ln g is defined)");
  }
  if (!(z_lo < z_hi)) {
    throw scenario_error("spec: phase window must satisfy z_lo < z_hi");
  }
  if (z0 < z_lo || z0 > z_hi) {
    throw scenario_error("spec: anchor z0 must lie inside the phase window");
  }
  try {
    eos::PressureLaw::make(law.gammas, law.weights);
  } catch (const std::invalid_argument& e) {
    throw scenario_error(std::string("spec: invalid pressure law: ") +
                         e.what());
  }
  auto check_len = [&](std::size_t n, const char* what) {
    if (n != 0 && n != static_cast<std::size_t>(dim)) {
      throw scenario_error(std::string("spec: ") + what +
                           " must be empty or have dim entries");
    }
  };
  check_len(forces.size(), "forces");
  check_len(gauges.size(), "gauges");
  check_len(a0.size(), "a0");
  check_len(a1.size(), "a1");
  if (delta == 0) {
    for (const auto& d : gauges) {
      if (!d.is_zero()) {
        throw scenario_error(
            "spec: gauge terms d_i require self-interaction (delta != 0)");
      }
    }
  }
}

// ---------------------------------------------------------------------------
// EntropyProfile

EntropyProfile EntropyProfile::from_samples(std::vector<double> z,
                                            std::vector<double> g,
                                            std::vector<double> dg,
                                            EntropyMethod method,
                                            double z_anchor) {
  if (z.size() < 2 || z.size() != g.size() || z.size() != dg.size()) {
    throw std::invalid_argument(
        "EntropyProfile: need >= 2 samples with matching arrays");
  }
  for (std::size_t i = 1; i < z.size(); ++i) {
    if (!(z[i] > z[i - 1])) {
      throw std::invalid_argument(
          "EntropyProfile: sample nodes must strictly increase");
    }
  }
  if (z_anchor < z.front() || z_anchor > z.back()) {
    throw std::invalid_argument(
        "EntropyProfile: anchor must lie inside the sampled range");
  }
  EntropyProfile p;
  p.z_ = std::move(z);
  p.g_ = std::move(g);
  p.dg_ = std::move(dg);
  p.method_ = method;
  p.anchor_ = z_anchor;
  p.recompute_positivity();
  return p;
}

std::size_t EntropyProfile::locate(double z) const {
  auto it = std::upper_bound(z_.begin(), z_.end(), z);
  std::size_t i = (it == z_.begin()) ? 0 : static_cast<std::size_t>(it - z_.begin()) - 1;
  if (i + 1 >= z_.size()) i = z_.size() - 2;
  return i;
}

double EntropyProfile::g(double z) const {
  if (z_.empty()) throw precondition_error("EntropyProfile: empty profile");
  if (z < z_.front() || z > z_.back()) {
    throw precondition_error(
        "EntropyProfile: phase z = " + std::to_string(z) +
            " outside sampled range [" + std::to_string(z_.front()) + ", " +
            std::to_string(z_.back()) + "]",
        z);
  }
  const std::size_t i = locate(z);
  return hermite_value(z, z_[i], z_[i + 1], g_[i], g_[i + 1], dg_[i],
                       dg_[i + 1]);
}

double EntropyProfile::dg(double z) const {
  if (z_.empty()) throw precondition_error("EntropyProfile: empty profile");
  if (z < z_.front() || z > z_.back()) {
    throw precondition_error(
        "EntropyProfile: phase z = " + std::to_string(z) +
            " outside sampled range",
        z);
  }
  const std::size_t i = locate(z);
  return hermite_slope(z, z_[i], z_[i + 1], g_[i], g_[i + 1], dg_[i],
                       dg_[i + 1]);
}

void EntropyProfile::recompute_positivity() {
  const double ga = g(anchor_);
  if (!(ga > 0.0)) {  // degenerate: no positive neighbourhood of the anchor
    pos_lo_ = pos_hi_ = anchor_;
    return;
  }
  auto bisect = [&](double lo, double hi, bool lo_positive) {
    // g(lo) and g(hi) straddle zero; return a crossing point.
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      const bool mid_pos = g(mid) > 0.0;
      if (mid_pos == lo_positive) lo = mid; else hi = mid;
    }
    return 0.5 * (lo + hi);
  };
  const std::size_t ia = locate(anchor_);
  pos_hi_ = z_.back();
  for (std::size_t k = ia + 1; k < z_.size(); ++k) {
    if (!(g_[k] > 0.0)) {
      const double lo = std::max(anchor_, z_[k - 1]);
      pos_hi_ = bisect(lo, z_[k], true);
      break;
    }
  }
  pos_lo_ = z_.front();
  for (std::size_t k = ia + 1; k-- > 0;) {
    if (!(g_[k] > 0.0)) {
      const double hi = std::min(anchor_, z_[k + 1]);
      pos_lo_ = bisect(hi, z_[k], true);
      break;
    }
  }
  if (pos_lo_ > pos_hi_) std::swap(pos_lo_, pos_hi_);
}

EntropyProfile EntropyProfile::scaled(double factor) const {
  EntropyProfile p(*this);
  for (auto& v : p.g_) v *= factor;
  for (auto& v : p.dg_) v *= factor;
  p.recompute_positivity();
  return p;
}

// ---------------------------------------------------------------------------
// Trajectory

void Trajectory::require_inside(double t) const {
  if (t < t_lo_ || t > t_hi_) {
    throw precondition_error(
        "Trajectory: t = " + std::to_string(t) + " outside solved range [" +
            std::to_string(t_lo_) + ", " + std::to_string(t_hi_) + "]",
        t);
  }
}

namespace {

void require_axis(int axis, int dim) {
  if (axis < 0 || axis >= dim) {
    throw std::invalid_argument("Trajectory: axis " + std::to_string(axis) +
                                " out of range");
  }
}

std::size_t grid_interval(const std::vector<double>& grid, double t) {
  auto it = std::upper_bound(grid.begin(), grid.end(), t);
  std::size_t i = (it == grid.begin()) ? 0 : static_cast<std::size_t>(it - grid.begin()) - 1;
  if (i + 1 >= grid.size()) i = grid.size() - 2;
  return i;
}

}  // namespace

double Trajectory::raw_single(int axis, double t) const {
  const std::size_t k = grid_interval(grid_, t);
  return w_nodes_[axis][k] + numerics::gauss7(w_fns_[axis], grid_[k], t);
}

double Trajectory::raw_double(int axis, double t) const {
  const std::size_t k = grid_interval(grid_, t);
  const double tk = grid_[k];
  const auto& w = w_fns_[axis];
  const double inner_base = w_nodes_[axis][k];
  return ww_nodes_[axis][k] + inner_base * (t - tk) +
         numerics::gauss7(
             [&](double s) { return numerics::gauss7(w, tk, s); }, tk, t);
}

double Trajectory::position(int axis, double t) const {
  require_axis(axis, dim_);
  require_inside(t);
  switch (method_) {
    case TrajectoryMethod::quadrature:
      return a0_[axis] + a1_[axis] * t + 0.5 * cxi_[axis] * t * t +
             (raw_double(axis, t) - h_at0_[axis] - g_at0_[axis] * t);
    case TrajectoryMethod::damped_rk4: {
      const std::size_t k = grid_interval(steps_, t);
      return hermite_value(t, steps_[k], steps_[k + 1], pos_nodes_[axis][k],
                           pos_nodes_[axis][k + 1], vel_nodes_[axis][k],
                           vel_nodes_[axis][k + 1]);
    }
    case TrajectoryMethod::external:
      return ext_pos_(axis, t);
  }
  return 0.0;
}

double Trajectory::velocity(int axis, double t) const {
  require_axis(axis, dim_);
  require_inside(t);
  switch (method_) {
    case TrajectoryMethod::quadrature:
      return a1_[axis] + cxi_[axis] * t + (raw_single(axis, t) - g_at0_[axis]);
    case TrajectoryMethod::damped_rk4: {
      const std::size_t k = grid_interval(steps_, t);
      return hermite_value(t, steps_[k], steps_[k + 1], vel_nodes_[axis][k],
                           vel_nodes_[axis][k + 1], acc_nodes_[axis][k],
                           acc_nodes_[axis][k + 1]);
    }
    case TrajectoryMethod::external:
      return ext_vel_(axis, t);
  }
  return 0.0;
}

double Trajectory::acceleration(int axis, double t) const {
  require_axis(axis, dim_);
  require_inside(t);
  switch (method_) {
    case TrajectoryMethod::quadrature:
      return cxi_[axis] + w_fns_[axis](t);
    case TrajectoryMethod::damped_rk4: {
      const std::size_t k = grid_interval(steps_, t);
      const double s = (t - steps_[k]) / (steps_[k + 1] - steps_[k]);
      return (1.0 - s) * acc_nodes_[axis][k] + s * acc_nodes_[axis][k + 1];
    }
    case TrajectoryMethod::external:
      return ext_acc_(axis, t);
  }
  return 0.0;
}

std::vector<double> Trajectory::position(double t) const {
  std::vector<double> out(static_cast<std::size_t>(dim_));
  for (int i = 0; i < dim_; ++i) out[static_cast<std::size_t>(i)] = position(i, t);
  return out;
}

std::vector<double> Trajectory::velocity(double t) const {
  std::vector<double> out(static_cast<std::size_t>(dim_));
  for (int i = 0; i < dim_; ++i) out[static_cast<std::size_t>(i)] = velocity(i, t);
  return out;
}

std::vector<double> Trajectory::acceleration(double t) const {
  std::vector<double> out(static_cast<std::size_t>(dim_));
  for (int i = 0; i < dim_; ++i) out[static_cast<std::size_t>(i)] = acceleration(i, t);
  return out;
}

Trajectory Trajectory::from_functions(int dim, double t_lo, double t_hi,
                                      AxisFn pos, AxisFn vel, AxisFn acc) {
  if (dim < 1 || !(t_lo < t_hi)) {
    throw std::invalid_argument("Trajectory: bad external description");
  }
  Trajectory tr;
  tr.dim_ = dim;
  tr.t_lo_ = t_lo;
  tr.t_hi_ = t_hi;
  tr.method_ = TrajectoryMethod::external;
  tr.ext_pos_ = std::move(pos);
  tr.ext_vel_ = std::move(vel);
  tr.ext_acc_ = std::move(acc);
  return tr;
}

Trajectory solve_trajectory(const LineSolutionSpec& spec, double t_lo,
                            double t_hi) {
  spec.validate();
  if (!(t_lo < t_hi) || t_lo > 0.0 || t_hi < 0.0) {
    throw std::invalid_argument(
        "solve_trajectory: need t_lo <= 0 <= t_hi with t_lo < t_hi (initial "
        "conditions anchor at t = 0)");
  }
  Trajectory tr;
  tr.dim_ = spec.dim;
  tr.t_lo_ = t_lo;
  tr.t_hi_ = t_hi;
  tr.method_ = TrajectoryMethod::quadrature;

  const int m = std::max(64, static_cast<int>(std::ceil((t_hi - t_lo) * 64.0)));
  tr.grid_.resize(static_cast<std::size_t>(m) + 1);
  for (int k = 0; k <= m; ++k) {
    tr.grid_[static_cast<std::size_t>(k)] = t_lo + (t_hi - t_lo) * k / static_cast<double>(m);
  }

  const int n = spec.dim;
  tr.w_nodes_.assign(static_cast<std::size_t>(n), {});
  tr.ww_nodes_.assign(static_cast<std::size_t>(n), {});
  tr.a0_.resize(static_cast<std::size_t>(n));
  tr.a1_.resize(static_cast<std::size_t>(n));
  tr.cxi_.resize(static_cast<std::size_t>(n));
  tr.g_at0_.assign(static_cast<std::size_t>(n), 0.0);
  tr.h_at0_.assign(static_cast<std::size_t>(n), 0.0);
  tr.w_fns_.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const std::size_t ui = static_cast<std::size_t>(i);
    tr.a0_[ui] = entry_or_zero(spec.a0, i);
    tr.a1_[ui] = entry_or_zero(spec.a1, i);
    tr.cxi_[ui] = spec.line_coeffs[ui] * spec.xi;
    // Forcing minus the gauge contribution: a_i'' = F_i + C_i xi - delta d_i.
    tr.w_fns_[ui] = [forces = spec.forces, gauges = spec.gauges,
                     delta = spec.delta, i](double t) {
      return value_or_zero(forces, i, t) -
             static_cast<double>(delta) * value_or_zero(gauges, i, t);
    };

    auto& wn = tr.w_nodes_[ui];
    auto& wwn = tr.ww_nodes_[ui];
    wn.resize(tr.grid_.size());
    wwn.resize(tr.grid_.size());
    Kahan single, dbl;
    wn[0] = 0.0;
    wwn[0] = 0.0;
    for (std::size_t k = 0; k + 1 < tr.grid_.size(); ++k) {
      const double ta = tr.grid_[k];
      const double tb = tr.grid_[k + 1];
      const auto& w = tr.w_fns_[ui];
      dbl.add(single.sum * (tb - ta) +
              numerics::gauss7(
                  [&](double s) { return numerics::gauss7(w, ta, s); }, ta,
                  tb));
      single.add(numerics::gauss7(w, ta, tb));
      wn[k + 1] = single.sum;
      wwn[k + 1] = dbl.sum;
    }
    tr.g_at0_[ui] = tr.raw_single(i, 0.0);
    tr.h_at0_[ui] = tr.raw_double(i, 0.0);
  }
  return tr;
}

Trajectory solve_trajectory_damped(const LineSolutionSpec& spec,
                                   const std::vector<DampingTerm>& damping,
                                   double t_hi, double step) {
  spec.validate();
  if (!(t_hi > 0.0)) {
    throw std::invalid_argument("solve_trajectory_damped: t_hi must be > 0");
  }
  if (!(step > 0.0)) {
    throw std::invalid_argument("solve_trajectory_damped: step must be > 0");
  }
  double v0_norm2 = 0.0;
  for (double v : spec.a1) v0_norm2 += v * v;
  for (const auto& d : damping) {
    if (!(d.beta >= 0.0)) {
      throw std::invalid_argument(
          "solve_trajectory_damped: damping strength must be >= 0");
    }
    if (!(d.p > 0.0)) {
      throw std::invalid_argument(
          "solve_trajectory_damped: velocity exponent must be > 0");
    }
    if (d.p < 1.0 && d.beta > 0.0 && v0_norm2 == 0.0) {
      throw scenario_error(
          "solve_trajectory_damped: exponent p < 1 with vanishing initial "
          "velocity makes the damping term singular at t = 0");
    }
  }

  const int n = spec.dim;
  const std::size_t un = static_cast<std::size_t>(n);
  auto rhs = [&](double t, std::span<const double> y, std::span<double> dy) {
    // y = [a_1..a_n, v_1..v_n]
    double vnorm2 = 0.0;
    for (std::size_t i = 0; i < un; ++i) vnorm2 += y[un + i] * y[un + i];
    const double vnorm = std::sqrt(vnorm2);
    double drag = 0.0;  // sum_l beta_l |v|^(p_l - 1)
    for (const auto& d : damping) {
      if (d.beta == 0.0) continue;
      if (vnorm == 0.0) continue;  // |v|^(p-1) v -> 0 as |v| -> 0 for p > 0
      drag += d.beta * std::pow(vnorm, d.p - 1.0);
    }
    for (std::size_t i = 0; i < un; ++i) {
      const int axis = static_cast<int>(i);
      dy[i] = y[un + i];
      dy[un + i] = value_or_zero(spec.forces, axis, t) +
                   spec.line_coeffs[i] * spec.xi -
                   static_cast<double>(spec.delta) *
                       value_or_zero(spec.gauges, axis, t) -
                   drag * y[un + i];
    }
  };

  std::vector<double> y0(2 * un, 0.0);
  for (std::size_t i = 0; i < un; ++i) {
    y0[i] = entry_or_zero(spec.a0, static_cast<int>(i));
    y0[un + i] = entry_or_zero(spec.a1, static_cast<int>(i));
  }
  const auto path = numerics::rk4_solve(rhs, y0, 0.0, t_hi, step);

  Trajectory tr;
  tr.dim_ = n;
  tr.t_lo_ = 0.0;
  tr.t_hi_ = t_hi;
  tr.method_ = TrajectoryMethod::damped_rk4;
  tr.steps_ = path.t;
  tr.pos_nodes_.assign(un, std::vector<double>(path.t.size()));
  tr.vel_nodes_.assign(un, std::vector<double>(path.t.size()));
  tr.acc_nodes_.assign(un, std::vector<double>(path.t.size()));
  std::vector<double> dy(2 * un);
  for (std::size_t k = 0; k < path.t.size(); ++k) {
    rhs(path.t[k], path.y[k], dy);
    for (std::size_t i = 0; i < un; ++i) {
      tr.pos_nodes_[i][k] = path.y[k][i];
      tr.vel_nodes_[i][k] = path.y[k][un + i];
      tr.acc_nodes_[i][k] = dy[un + i];
    }
  }
  return tr;
}

// ---------------------------------------------------------------------------
// Field assembly

double phase(const LineSolutionSpec& spec, const Trajectory& traj, double t,
             std::span<const double> x) {
  if (x.size() != static_cast<std::size_t>(spec.dim)) {
    throw std::invalid_argument("phase: x must have dim entries");
  }
  double z = 0.0;
  for (int i = 0; i < spec.dim; ++i) {
    const std::size_t ui = static_cast<std::size_t>(i);
    z += spec.line_coeffs[ui] * (x[ui] - traj.position(i, t));
  }
  return z;
}

double density_of_z(const LineSolutionSpec& spec, double z) {
  if (spec.delta == 0) return spec.profile.eval(z, 0);
  return spec.sum_c2() / numerics::alpha(spec.dim) * spec.profile.eval(z, 2);
}

double density_deriv(const LineSolutionSpec& spec, double z, int order) {
  if (order < 0 || order > 1) {
    throw std::invalid_argument("density_deriv: order must be 0 or 1");
  }
  if (spec.delta == 0) return spec.profile.eval(z, order);
  return spec.sum_c2() / numerics::alpha(spec.dim) *
         spec.profile.eval(z, order + 2);
}

namespace {

// rho * (xi + delta f'), the drive term of the entropy constraint.
double entropy_drive(const LineSolutionSpec& spec, double z) {
  double v = spec.xi;
  if (spec.delta != 0) {
    v += static_cast<double>(spec.delta) * spec.profile.eval(z, 1);
  }
  return density_of_z(spec, z) * v;
}

double checked_pressure_tilde(const LineSolutionSpec& spec, double z,
                              double rho) {
  if (rho < 0.0) {
    throw precondition_error(
        "entropy solve: density is negative at z = " + std::to_string(z), z);
  }
  const double pt = eos::pressure_tilde(spec.law, rho);
  if (!(pt > 0.0)) {
    throw precondition_error(
        "entropy solve: pressure factor vanishes (vacuum) at z = " +
            std::to_string(z),
        z);
  }
  return pt;
}

}  // namespace

EntropyProfile solve_entropy_first_integral(const LineSolutionSpec& spec,
                                            int n_nodes) {
  spec.validate();
  if (n_nodes < 9) {
    throw std::invalid_argument(
        "solve_entropy_first_integral: need at least 9 nodes");
  }
  const std::size_t n = static_cast<std::size_t>(n_nodes);
  std::vector<double> z(n), rho(n), pt(n);
  for (std::size_t k = 0; k < n; ++k) {
    z[k] = spec.z_lo +
           (spec.z_hi - spec.z_lo) * static_cast<double>(k) / static_cast<double>(n - 1);
    rho[k] = density_of_z(spec, z[k]);
    pt[k] = checked_pressure_tilde(spec, z[k], rho[k]);
  }

  auto drive = [&](double s) { return entropy_drive(spec, s); };

  // Prefix integrals of the drive from z_lo, then re-anchor at z0.
  std::vector<double> prefix(n, 0.0);
  Kahan acc;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    acc.add(numerics::gauss7(drive, z[k], z[k + 1]));
    prefix[k + 1] = acc.sum;
  }
  const std::size_t k0 =
      std::min(n - 2, static_cast<std::size_t>(std::upper_bound(z.begin(), z.end(), spec.z0) -
                                               z.begin() - 1));
  const double at_z0 = prefix[k0] + numerics::gauss7(drive, z[k0], spec.z0);

  const double rho0 = density_of_z(spec, spec.z0);
  const double k_const =
      spec.g0 * checked_pressure_tilde(spec, spec.z0, rho0);

  std::vector<double> g(n), dg(n);
  for (std::size_t k = 0; k < n; ++k) {
    g[k] = (k_const - (prefix[k] - at_z0)) / pt[k];
    const double dpt = eos::dpressure_tilde_drho(spec.law, rho[k]);
    const double drho = density_deriv(spec, z[k], 1);
    dg[k] = -(drive(z[k]) + g[k] * dpt * drho) / pt[k];
  }
  return EntropyProfile::from_samples(std::move(z), std::move(g),
                                      std::move(dg),
                                      EntropyMethod::first_integral, spec.z0);
}

EntropyProfile solve_entropy_ode(const LineSolutionSpec& spec, double step) {
  spec.validate();
  if (step <= 0.0) step = (spec.z_hi - spec.z_lo) / 4096.0;
  if (!(step > 0.0) || step >= (spec.z_hi - spec.z_lo)) {
    throw std::invalid_argument("solve_entropy_ode: bad step size");
  }

  auto g_rhs = [&](double zz, double g) {
    const double rho = density_of_z(spec, zz);
    const double pt = checked_pressure_tilde(spec, zz, rho);
    const double dpt = eos::dpressure_tilde_drho(spec.law, rho);
    const double drho = density_deriv(spec, zz, 1);
    return -(entropy_drive(spec, zz) + g * dpt * drho) / pt;
  };
  auto deriv = [&](double zz, std::span<const double> y,
                   std::span<double> dy) { dy[0] = g_rhs(zz, y[0]); };

  std::vector<double> zs, gs;
  auto append_branch = [&](double target) {
    if (target == spec.z0) return;
    const auto path = numerics::rk4_solve(deriv, {spec.g0}, spec.z0, target,
                                          step);
    for (std::size_t k = 1; k < path.t.size(); ++k) {
      zs.push_back(path.t[k]);
      gs.push_back(path.y[k][0]);
    }
  };

  zs.push_back(spec.z0);
  gs.push_back(spec.g0);
  append_branch(spec.z_hi);
  // Prepend the descending branch (integrated right-to-left).
  {
    std::vector<double> zb, gb;
    if (spec.z_lo < spec.z0) {
      const auto path = numerics::rk4_solve(deriv, {spec.g0}, spec.z0,
                                            spec.z_lo, step);
      for (std::size_t k = 1; k < path.t.size(); ++k) {
        zb.push_back(path.t[k]);
        gb.push_back(path.y[k][0]);
      }
    }
    std::reverse(zb.begin(), zb.end());
    std::reverse(gb.begin(), gb.end());
    zs.insert(zs.begin(), zb.begin(), zb.end());
    gs.insert(gs.begin(), gb.begin(), gb.end());
  }

  // Truncate each branch just past its first nonpositive sample so the
  // profile records the crossing without integrating beyond it.
  const auto anchor_it = std::lower_bound(zs.begin(), zs.end(), spec.z0);
  std::size_t ia = static_cast<std::size_t>(anchor_it - zs.begin());
  std::size_t hi = zs.size();
  for (std::size_t k = ia; k < zs.size(); ++k) {
    if (!(gs[k] > 0.0)) {
      hi = k + 1;
      break;
    }
  }
  std::size_t lo = 0;
  for (std::size_t k = ia + 1; k-- > 0;) {
    if (!(gs[k] > 0.0)) {
      lo = k;
      break;
    }
  }
  std::vector<double> z_cut(zs.begin() + static_cast<std::ptrdiff_t>(lo),
                            zs.begin() + static_cast<std::ptrdiff_t>(hi));
  std::vector<double> g_cut(gs.begin() + static_cast<std::ptrdiff_t>(lo),
                            gs.begin() + static_cast<std::ptrdiff_t>(hi));
  std::vector<double> dg_cut(z_cut.size());
  for (std::size_t k = 0; k < z_cut.size(); ++k) {
    dg_cut[k] = g_rhs(z_cut[k], g_cut[k]);
  }
  return EntropyProfile::from_samples(std::move(z_cut), std::move(g_cut),
                                      std::move(dg_cut), EntropyMethod::ode,
                                      spec.z0);
}

double build_potential(const LineSolutionSpec& spec, const Trajectory& traj,
                       double t, std::span<const double> x) {
  if (spec.delta == 0) {
    throw precondition_error(
        "build_potential: potential undefined for delta = 0");
  }
  double phi = spec.profile.eval(phase(spec, traj, t, x), 0);
  for (int i = 0; i < spec.dim; ++i) {
    phi += value_or_zero(spec.gauges, i, t) * x[static_cast<std::size_t>(i)];
  }
  return phi;
}

FieldState SolvedSolution::evaluate(double t, std::span<const double> x) const {
  const double z = phase(spec, trajectory, t, x);
  const auto [lo, hi] = entropy.positivity_domain();
  if (z < lo || z > hi) {
    throw precondition_error(
        "evaluate: phase z = " + std::to_string(z) +
            " outside the entropy positivity domain [" + std::to_string(lo) +
            ", " + std::to_string(hi) + "]",
        z);
  }
  FieldState st;
  st.rho = density_of_z(spec, z);
  if (st.rho < 0.0) {
    throw precondition_error(
        "evaluate: density is negative at z = " + std::to_string(z), z);
  }
  const double g = entropy.g(z);
  if (!(g > 0.0)) {
    throw precondition_error(
        "evaluate: entropy factor not positive at z = " + std::to_string(z),
        z);
  }
  st.S = std::log(g);
  st.u = trajectory.velocity(t);
  st.P = eos::pressure(spec.law, st.rho, st.S);
  if (spec.delta != 0) {
    st.Phi = build_potential(spec, trajectory, t, x);
  }
  return st;
}

double mass_1d(const SolvedSolution& solution, double t, double quad_tol) {
  (void)t;  // the x-window just translates with t; the integral does not
  const auto& spec = solution.spec;
  if (spec.dim != 1) {
    throw std::invalid_argument("mass_1d: defined for one-dimensional states");
  }
  const auto q = numerics::adaptive_quad(
      [&](double z) { return density_of_z(spec, z); }, spec.z_lo, spec.z_hi,
      quad_tol);
  return q.value / std::abs(spec.line_coeffs[0]);
}

SolvedSolution solve(const LineSolutionSpec& spec, const SolveOptions& options) {
  spec.validate();

  using profiles::SignRequirement;
  const bool isothermal_leading = spec.law.gammas.front() == 1.0;
  const SignRequirement req =
      spec.delta == 0
          ? (isothermal_leading ? SignRequirement::positive
                                : SignRequirement::nonnegative)
          : SignRequirement::convex;
  const auto sign = spec.profile.check_sign(spec.z_lo, spec.z_hi, req);
  if (!sign.passed) {
    const double where = sign.first_violation.value_or(spec.z_lo);
    throw precondition_error(
        spec.delta == 0
            ? "solve: density profile violates its sign requirement at z = " +
                  std::to_string(where)
            : "solve: potential shape must be convex (density >= 0); "
              "violated at z = " +
                  std::to_string(where),
        where);
  }

  SolvedSolution sol{spec, {}, {}};
  sol.entropy = options.entropy_by_ode
                    ? solve_entropy_ode(spec, options.ode_step)
                    : solve_entropy_first_integral(spec, options.entropy_nodes);
  if (options.damping && !options.damping->empty()) {
    sol.trajectory = solve_trajectory_damped(spec, *options.damping,
                                             options.t_hi,
                                             options.trajectory_step);
  } else {
    sol.trajectory = solve_trajectory(spec, options.t_lo, options.t_hi);
  }
  return sol;
}

}  // namespace linesol::exact
