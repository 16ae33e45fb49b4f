#pragma once

// Scenario files: one JSON document describing the gas model, how to solve
// it, and what each verification command should run.  Parsing normalizes to
// a canonical serialized form (sorted keys, explicit defaults) so that
// deserialize -> serialize is idempotent and outputs stay diff-able.

#include <optional>
#include <string>
#include <vector>

#include "linesol/exact.hpp"

namespace linesol::scenario {

struct ResidualConfig {
  std::vector<double> t_samples{0.0, 0.75, 1.5};
  double z_lo = -1.0, z_hi = 1.0;  // sweep window in phase
  int n_points = 101;
  double h = 1e-3;          // finite-difference probe step
  double tolerance = 1e-9;  // pass bound for the analytic max-norms
};

struct FVConfig {
  std::vector<int> grids{200, 400, 800};
  double x_lo = -1.0, x_hi = 1.0;
  double cfl = 0.5;
  double t_end = 0.2;
  std::vector<double> output_times;
};

struct TrajectoryConfig {
  double t_hi = 2.0;
  int n_samples = 81;
  std::vector<exact::DampingTerm> damping;  // empty: undamped path
  double step = 1e-3;                       // integrator step when damped
};

struct Scenario {
  std::string name;
  exact::LineSolutionSpec spec;
  exact::SolveOptions solve_options;
  ResidualConfig residual;
  std::optional<FVConfig> fv;
  std::vector<double> mass_times{0.0, 1.0, 2.0};
  TrajectoryConfig trajectory;
  std::string output_dir = "out";
};

// Throws scenario_error on unknown family/kind names, missing required
// keys, or type mismatches.  Numeric plausibility (sum C_i^2 > 0, g0 > 0,
// ...) is checked later when the scenario is solved.
Scenario parse(const std::string& json_text);

// Canonical form: alphabetically ordered keys, all defaults spelled out.
// serialize(parse(serialize(s))) == serialize(s).
std::string serialize(const Scenario& s);

Scenario load_file(const std::string& path);

}  // namespace linesol::scenario
