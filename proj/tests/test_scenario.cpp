#include "linesol/scenario.hpp"

#include <string>

#include "doctest.h"
#include "linesol/errors.hpp"

using namespace linesol;
using namespace linesol::scenario;

namespace {

const char* kMinimal = R"({
  "name": "minimal",
  "model": {
    "line_coeffs": [1.0],
    "pressure": {"gammas": [2.0]},
    "profile": {"family": "constant", "value": 1.0},
    "phase_window": [-2.0, 2.0]
  }
})";

const char* kFull = R"({
  "name": "full",
  "model": {
    "dim": 2,
    "line_coeffs": [1.0, -1.0],
    "xi": 0.25,
    "delta": -1,
    "pressure": {"gammas": [1.0, 1.4, 2.0], "weights": [1.0, 0.5, 0.25]},
    "profile": {"family": "polynomial", "coefficients": [0.0, 0.0, 0.5, 0.0, 0.020833333333333332]},
    "entropy_anchor": {"z0": 0.1, "g0": 2.5},
    "phase_window": [-1.5, 1.5],
    "forces": [
      {"kind": "sinusoid", "amplitude": 0.2, "omega": 1.0, "phase": 0.0},
      {"kind": "zero"}
    ],
    "gauges": [
      {"kind": "constant", "value": 0.1},
      {"kind": "polynomial", "coefficients": [0.0, 0.3]}
    ],
    "initial_position": [0.0, 0.5],
    "initial_velocity": [0.4, 0.0]
  },
  "solve": {"entropy_nodes": 8193, "ode_step": 0.001, "entropy_by_ode": false, "t_lo": -1.0, "t_hi": 3.0},
  "residual": {"t_samples": [0.0, 0.5], "z_window": [-1.0, 1.0], "n_points": 51, "h": 0.002, "tolerance": 1e-8},
  "fv": {"grids": [100, 200], "x_window": [-0.8, 0.8], "cfl": 0.4, "t_end": 0.1, "output_times": [0.05, 0.1]},
  "mass_times": [0.0, 0.5, 1.0],
  "trajectory": {"t_hi": 1.5, "n_samples": 61, "step": 0.0005, "damping": [{"beta": 1.0, "p": 1.0}]},
  "output_dir": "out/full"
})";

}  // namespace

TEST_CASE("minimal scenario fills defaults") {
  const Scenario s = parse(kMinimal);
  CHECK(s.name == "minimal");
  CHECK(s.spec.dim == 1);
  CHECK(s.spec.xi == 0.0);
  CHECK(s.spec.delta == 0);
  CHECK(s.spec.g0 == 1.0);
  CHECK(s.spec.z_lo == -2.0);
  CHECK(s.spec.law.weights == std::vector<double>{1.0});
  CHECK(s.solve_options.entropy_nodes == 4097);
  CHECK_FALSE(s.solve_options.entropy_by_ode);
  CHECK(s.residual.n_points == 101);
  CHECK_FALSE(s.fv.has_value());
  CHECK(s.trajectory.damping.empty());
  CHECK(s.output_dir == "out");
  CHECK_NOTHROW(s.spec.validate());
}

TEST_CASE("full scenario parses every block") {
  const Scenario s = parse(kFull);
  CHECK(s.spec.dim == 2);
  CHECK(s.spec.delta == -1);
  CHECK(s.spec.law.gammas.size() == 3);
  CHECK(s.spec.law.weights[2] == 0.25);
  CHECK(s.spec.profile.family_name() == "polynomial");
  CHECK(s.spec.z0 == 0.1);
  CHECK(s.spec.forces.size() == 2);
  CHECK(s.spec.forces[1].is_zero());
  CHECK(s.spec.gauges.size() == 2);
  CHECK(s.spec.a0 == std::vector<double>{0.0, 0.5});
  CHECK(s.solve_options.entropy_nodes == 8193);
  CHECK(s.solve_options.t_hi == 3.0);
  CHECK(s.residual.z_lo == -1.0);
  CHECK(s.residual.tolerance == 1e-8);
  REQUIRE(s.fv.has_value());
  CHECK(s.fv->grids == std::vector<int>{100, 200});
  CHECK(s.fv->cfl == 0.4);
  CHECK(s.mass_times.size() == 3);
  REQUIRE(s.trajectory.damping.size() == 1);
  CHECK(s.trajectory.damping[0].beta == 1.0);
  CHECK(s.output_dir == "out/full");
}

TEST_CASE("serialization round-trips to a fixed point") {
  for (const char* text : {kMinimal, kFull}) {
    const std::string s1 = serialize(parse(text));
    const std::string s2 = serialize(parse(s1));
    CHECK(s1 == s2);
    CHECK(!s1.empty());
  }
}

TEST_CASE("profiles and time functions survive a round trip") {
  const char* families = R"({
    "name": "families",
    "model": {
      "line_coeffs": [2.0],
      "pressure": {"gammas": [1.4]},
      "profile": {"family": "tabulated",
                  "z": [-1.0, 0.0, 1.0, 2.0],
                  "values": [0.5, 1.0, 0.5, 0.25]},
      "phase_window": [-1.0, 2.0]
    }
  })";
  const Scenario s = parse(families);
  CHECK(s.spec.profile.family_name() == "tabulated");
  const std::string s1 = serialize(s);
  const Scenario back = parse(s1);
  CHECK(back.spec.profile.eval(0.5) == s.spec.profile.eval(0.5));
  CHECK(serialize(back) == s1);

  for (const char* fam : {"gaussian", "sech_squared", "compact_bump"}) {
    const std::string text = std::string(R"({
      "name": "f",
      "model": {
        "line_coeffs": [1.0],
        "pressure": {"gammas": [2.0]},
        "profile": {"family": ")") +
                             fam +
                             R"(", "amplitude": 1.0, "center": 0.0, )" +
                             (std::string(fam) == "compact_bump"
                                  ? R"("radius": 1.5})"
                                  : R"("width": 1.5})") +
                             R"(,
        "phase_window": [-1.0, 1.0]
      }
    })";
    const std::string s1f = serialize(parse(text));
    CHECK(serialize(parse(s1f)) == s1f);
  }
}

TEST_CASE("structural violations are scenario errors") {
  CHECK_THROWS_AS((void)parse("{not json"), scenario_error);
  CHECK_THROWS_AS((void)parse(R"({"model": {}})"), scenario_error);  // no name
  const char* unknown_family = R"({
    "name": "x",
    "model": {
      "line_coeffs": [1.0],
      "pressure": {"gammas": [2.0]},
      "profile": {"family": "wavelet", "value": 1.0},
      "phase_window": [-1.0, 1.0]
    }
  })";
  CHECK_THROWS_AS((void)parse(unknown_family), scenario_error);
  const char* unknown_kind = R"({
    "name": "x",
    "model": {
      "line_coeffs": [1.0],
      "pressure": {"gammas": [2.0]},
      "profile": {"family": "constant", "value": 1.0},
      "phase_window": [-1.0, 1.0],
      "forces": [{"kind": "sawtooth"}]
    }
  })";
  CHECK_THROWS_AS((void)parse(unknown_kind), scenario_error);
  const char* bad_window = R"({
    "name": "x",
    "model": {
      "line_coeffs": [1.0],
      "pressure": {"gammas": [2.0]},
      "profile": {"family": "constant", "value": 1.0},
      "phase_window": [-1.0]
    }
  })";
  CHECK_THROWS_AS((void)parse(bad_window), scenario_error);
  CHECK_THROWS_AS((void)load_file("/nonexistent/scenario.json"),
                  scenario_error);
}
