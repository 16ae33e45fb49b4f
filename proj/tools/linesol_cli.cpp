// Scenario-driven command line tool.
//
//   linesol <verify|entropy|evolve|mass|trajectory>
//           --scenario <path> [--out <dir>] [--tol <real>] [--h <real>]
//
// Every command loads one scenario file, runs one verification workflow and
// writes fixed-format CSV reports into the scenario's output directory
// (overridden by --out).  Outputs are deterministic: the same scenario file
// produces byte-identical CSVs.
//
// Exit codes partition the outcomes:
//   0  all checks passed
//   2  invalid scenario (parse error or structural violation)
//   3  mathematical precondition violated (sign-indefinite density, vacuum,
//      phase outside the entropy positivity domain)
//   4  numerical failure (solver blow-up, or a completed check that missed
//      its tolerance)

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "linesol/errors.hpp"
#include "linesol/exact.hpp"
#include "linesol/fvsolver.hpp"
#include "linesol/io.hpp"
#include "linesol/residual.hpp"
#include "linesol/scenario.hpp"

namespace {

namespace exact = linesol::exact;
namespace fv = linesol::fv;
namespace io = linesol::io;
namespace residual = linesol::residual;
using linesol::scenario::Scenario;

std::string join_path(const std::string& dir, const std::string& name) {
  return dir.empty() ? name : dir + "/" + name;
}

// Residual sweep in both modes; pass iff every analytic max-norm meets tol.
int cmd_verify(const Scenario& sc, const std::string& out, double tol) {
  const exact::SolvedSolution sol = exact::solve(sc.spec, sc.solve_options);
  const residual::SweepGrid grid{sc.residual.t_samples, sc.residual.z_lo,
                                 sc.residual.z_hi, sc.residual.n_points};
  const auto analytic =
      residual::residual_sweep(sol, grid, residual::Mode::analytic);
  const auto fd = residual::residual_sweep(
      sol, grid, residual::Mode::finite_difference, sc.residual.h);

  std::string csv = "mode,equation,norm,value\n";
  const auto append = [&csv](const std::string& mode,
                             const residual::ResidualReport& rep) {
    const auto row = [&](const std::string& eq, const residual::Norms& n) {
      csv += mode + "," + eq + ",max_abs," + io::fmt(n.max_abs) + "\n";
      csv += mode + "," + eq + ",rms," + io::fmt(n.rms) + "\n";
    };
    row("mass", rep.mass);
    row("momentum", rep.momentum);
    row("entropy", rep.entropy);
    if (rep.has_poisson) row("poisson", rep.poisson);
  };
  append("analytic", analytic);
  append("finite_difference", fd);

  double worst = std::max({analytic.mass.max_abs, analytic.momentum.max_abs,
                           analytic.entropy.max_abs});
  if (analytic.has_poisson) worst = std::max(worst, analytic.poisson.max_abs);
  const bool pass = worst <= tol;

  std::string summary = "scenario: " + sc.name + "\n\n";
  summary += analytic.to_text() + "\n" + fd.to_text() + "\n";
  summary += "analytic max-norm: " + io::fmt(worst) +
             "  tolerance: " + io::fmt(tol) + "\n";
  summary += std::string("verdict: ") + (pass ? "PASS" : "FAIL") + "\n";

  io::write_file_atomic(join_path(out, "residuals.csv"), csv);
  io::write_file_atomic(join_path(out, "summary.txt"), summary);
  std::fputs(summary.c_str(), stdout);
  return pass ? 0 : 4;
}

// Solve the entropy constraint with both methods and compare them on the
// intersection of their positivity domains; pass iff the worst gap stays
// below tol (relative to max g).
int cmd_entropy(const Scenario& sc, const std::string& out, double tol) {
  sc.spec.validate();
  const auto fi = exact::solve_entropy_first_integral(
      sc.spec, sc.solve_options.entropy_nodes);
  const auto ode = exact::solve_entropy_ode(sc.spec, sc.solve_options.ode_step);

  const auto [fi_lo, fi_hi] = fi.positivity_domain();
  const auto [ode_lo, ode_hi] = ode.positivity_domain();
  const double lo = std::max(fi_lo, ode_lo);
  const double hi = std::min(fi_hi, ode_hi);
  if (!(lo < hi)) {
    throw linesol::precondition_error(
        "entropy: the two solvers report disjoint positivity domains", lo);
  }

  const int n = std::max(2, sc.residual.n_points);
  std::string csv =
      "# positivity_domain," + io::fmt(lo) + "," + io::fmt(hi) + "\n";
  csv += "z,g_first_integral,g_ode,abs_diff\n";
  double max_g = 0.0, max_diff = 0.0;
  for (int k = 0; k < n; ++k) {
    const double z = lo + (hi - lo) * k / (n - 1);
    const double gf = fi.g(z);
    const double go = ode.g(z);
    const double diff = std::abs(gf - go);
    max_g = std::max(max_g, std::abs(gf));
    max_diff = std::max(max_diff, diff);
    csv += io::fmt(z) + "," + io::fmt(gf) + "," + io::fmt(go) + "," +
           io::fmt(diff) + "\n";
  }
  io::write_file_atomic(join_path(out, "entropy.csv"), csv);

  const bool pass = max_diff <= tol * max_g;
  std::printf("positivity domain: [%s, %s]\n", io::fmt(lo).c_str(),
              io::fmt(hi).c_str());
  std::printf("max |g_first_integral - g_ode| = %s  (bound %s)\n",
              io::fmt(max_diff).c_str(), io::fmt(tol * max_g).c_str());
  std::printf("verdict: %s\n", pass ? "PASS" : "FAIL");
  return pass ? 0 : 4;
}

// Evolve the initial data with the finite-volume solver on each configured
// grid; pass iff every L1(rho) refinement ratio reaches tol (default 1.5).
int cmd_evolve(const Scenario& sc, const std::string& out, double tol) {
  if (!sc.fv) {
    throw linesol::scenario_error("evolve: scenario carries no fv block");
  }
  const exact::SolvedSolution sol = exact::solve(sc.spec, sc.solve_options);
  const auto& cfg = *sc.fv;

  std::vector<double> finals;
  for (const int n : cfg.grids) {
    const auto grid = fv::Grid1D::make(n, cfg.x_lo, cfg.x_hi);
    const fv::SolverConfig run_cfg{cfg.cfl, cfg.t_end};
    const auto result = fv::run(sol, grid, run_cfg, cfg.output_times);
    std::string csv = "t,l1_rho,l1_u,l1_S\n";
    for (const auto& e : result.series) {
      csv += io::fmt(e.t) + "," + io::fmt(e.rho) + "," + io::fmt(e.u) + "," +
             io::fmt(e.S) + "\n";
    }
    io::write_file_atomic(
        join_path(out, "errors_" + std::to_string(n) + ".csv"), csv);
    finals.push_back(result.series.back().rho);
  }

  bool pass = true;
  std::string conv = "n_cells,final_l1_rho,ratio\n";
  for (std::size_t k = 0; k < finals.size(); ++k) {
    std::string ratio;
    if (k > 0) {
      const double r = finals[k - 1] / finals[k];
      ratio = io::fmt(r);
      if (!(r >= tol)) pass = false;
    }
    conv += std::to_string(cfg.grids[k]) + "," + io::fmt(finals[k]) + "," +
            ratio + "\n";
    std::printf("n_cells=%d  l1_rho=%s%s%s\n", cfg.grids[k],
                io::fmt(finals[k]).c_str(), k > 0 ? "  ratio=" : "",
                ratio.c_str());
  }
  io::write_file_atomic(join_path(out, "convergence.csv"), conv);
  std::printf("verdict: %s\n", pass ? "PASS" : "FAIL");
  return pass ? 0 : 4;
}

// Total mass at each requested time; pass iff the relative drift from the
// first value stays below tol.  Profiles that do not decay are integrable
// only over the phase window, so their value is flagged as a window mass.
int cmd_mass(const Scenario& sc, const std::string& out, double tol) {
  if (sc.spec.dim != 1) {
    throw linesol::scenario_error(
        "mass: defined for one space dimension only (scenario has dim = " +
        std::to_string(sc.spec.dim) + ")");
  }
  const exact::SolvedSolution sol = exact::solve(sc.spec, sc.solve_options);
  const std::string fam = sc.spec.profile.family_name();
  const bool window_only =
      fam == "constant" || fam == "polynomial" || fam == "tabulated";

  std::string csv;
  if (window_only) {
    csv += "# window_mass: profile does not decay; integral restricted to "
           "the phase window\n";
  }
  csv += "t,mass\n";
  double first = 0.0, max_drift = 0.0;
  for (std::size_t k = 0; k < sc.mass_times.size(); ++k) {
    const double t = sc.mass_times[k];
    const double m = exact::mass_1d(sol, t);
    if (k == 0) {
      first = m;
    } else {
      max_drift = std::max(max_drift, std::abs(m - first) / std::abs(first));
    }
    csv += io::fmt(t) + "," + io::fmt(m) + "\n";
    std::printf("t=%s  M=%s%s\n", io::fmt(t).c_str(), io::fmt(m).c_str(),
                window_only ? "  (window mass)" : "");
  }
  io::write_file_atomic(join_path(out, "mass.csv"), csv);

  const bool pass = max_drift <= tol;
  std::printf("max relative drift = %s  (bound %s)\n",
              io::fmt(max_drift).c_str(), io::fmt(tol).c_str());
  std::printf("verdict: %s\n", pass ? "PASS" : "FAIL");
  return pass ? 0 : 4;
}

// Tabulate the trajectory (damped when the scenario carries damping terms)
// on a uniform time grid.  No tolerance check: the table is the product.
int cmd_trajectory(const Scenario& sc, const std::string& out) {
  sc.spec.validate();
  const auto& tc = sc.trajectory;
  const exact::Trajectory traj =
      tc.damping.empty()
          ? exact::solve_trajectory(sc.spec, std::min(0.0, -tc.step), tc.t_hi)
          : exact::solve_trajectory_damped(sc.spec, tc.damping, tc.t_hi,
                                           tc.step);

  const int dim = sc.spec.dim;
  std::string csv = "t";
  for (int i = 1; i <= dim; ++i) {
    csv += ",a_" + std::to_string(i) + ",adot_" + std::to_string(i);
  }
  csv += "\n";
  const int n = std::max(2, tc.n_samples);
  for (int k = 0; k < n; ++k) {
    const double t = tc.t_hi * k / (n - 1);
    csv += io::fmt(t);
    for (int i = 0; i < dim; ++i) {
      csv += "," + io::fmt(traj.position(i, t)) + "," +
             io::fmt(traj.velocity(i, t));
    }
    csv += "\n";
  }
  io::write_file_atomic(join_path(out, "trajectory.csv"), csv);
  std::printf("wrote %d samples on [0, %s] (%s path)\n", n,
              io::fmt(tc.t_hi).c_str(),
              tc.damping.empty() ? "undamped" : "damped");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"construct, solve and cross-check line-form gas states"};
  app.require_subcommand(1);
  // --h is a documented option, so help lives on --help alone.
  app.set_help_flag("--help", "print usage and exit");

  std::string scenario_path, out_dir;
  double tol = 0.0, h = 0.0;
  const struct {
    const char* name;
    const char* desc;
  } verbs[] = {
      {"verify", "residual sweep of the governing equations in both modes"},
      {"entropy", "compare the two entropy-constraint solvers"},
      {"evolve", "finite-volume cross-validation under grid refinement"},
      {"mass", "total mass at the configured times"},
      {"trajectory", "tabulate the particle path"},
  };
  for (const auto& v : verbs) {
    auto* sub = app.add_subcommand(v.name, v.desc);
    sub->set_help_flag("--help", "print usage and exit");
    sub->add_option("--scenario", scenario_path, "scenario JSON file")
        ->required();
    sub->add_option("--out", out_dir,
                    "output directory (overrides the scenario)");
    sub->add_option("--tol", tol, "pass tolerance override");
    sub->add_option("--h", h, "finite-difference step override");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;  // usage errors land in the invalid-input exit class
  }

  const CLI::App* sub = app.get_subcommands().at(0);
  const std::string verb = sub->get_name();
  try {
    Scenario sc = linesol::scenario::load_file(scenario_path);
    if (sub->count("--out") > 0) sc.output_dir = out_dir;
    if (sub->count("--h") > 0) sc.residual.h = h;
    const bool has_tol = sub->count("--tol") > 0;
    const std::string out = sc.output_dir;

    if (verb == "verify") {
      return cmd_verify(sc, out, has_tol ? tol : sc.residual.tolerance);
    }
    if (verb == "entropy") return cmd_entropy(sc, out, has_tol ? tol : 1e-8);
    if (verb == "evolve") return cmd_evolve(sc, out, has_tol ? tol : 1.5);
    if (verb == "mass") return cmd_mass(sc, out, has_tol ? tol : 1e-8);
    return cmd_trajectory(sc, out);
  } catch (const linesol::precondition_error& e) {
    if (std::isfinite(e.where)) {
      std::fprintf(stderr, "precondition violated: %s (at %s)\n", e.what(),
                   io::fmt(e.where).c_str());
    } else {
      std::fprintf(stderr, "precondition violated: %s\n", e.what());
    }
    return 3;
  } catch (const linesol::numerical_error& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 4;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "invalid scenario: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  }
}
