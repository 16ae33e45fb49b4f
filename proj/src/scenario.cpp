#include "linesol/scenario.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "linesol/errors.hpp"

namespace linesol::scenario {

namespace {

using nlohmann::json;

std::vector<double> doubles(const json& j) {
  return j.get<std::vector<double>>();
}

TimeFunction time_function_from(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "zero") return TimeFunction::zero();
  if (kind == "constant") {
    return TimeFunction::constant(j.at("value").get<double>());
  }
  if (kind == "sinusoid") {
    return TimeFunction::sinusoid(j.at("amplitude").get<double>(),
                                  j.at("omega").get<double>(),
                                  j.at("phase").get<double>());
  }
  if (kind == "polynomial") {
    return TimeFunction::polynomial(doubles(j.at("coefficients")));
  }
  throw scenario_error("scenario: unknown time function kind '" + kind + "'");
}

json time_function_to(const TimeFunction& f) {
  json j;
  const auto& p = f.params();
  switch (f.kind()) {
    case TimeFunction::Kind::zero:
      j["kind"] = "zero";
      break;
    case TimeFunction::Kind::constant:
      j["kind"] = "constant";
      j["value"] = p[0];
      break;
    case TimeFunction::Kind::sinusoid:
      j["kind"] = "sinusoid";
      j["amplitude"] = p[0];
      j["omega"] = p[1];
      j["phase"] = p[2];
      break;
    case TimeFunction::Kind::polynomial:
      j["kind"] = "polynomial";
      j["coefficients"] = p;
      break;
  }
  return j;
}

profiles::Profile profile_from(const json& j) {
  const std::string family = j.at("family").get<std::string>();
  if (family == "constant") {
    return profiles::Profile::constant(j.at("value").get<double>());
  }
  if (family == "gaussian") {
    return profiles::Profile::gaussian(j.at("amplitude").get<double>(),
                                       j.at("center").get<double>(),
                                       j.at("width").get<double>());
  }
  if (family == "polynomial") {
    return profiles::Profile::polynomial(doubles(j.at("coefficients")));
  }
  if (family == "sech_squared") {
    return profiles::Profile::sech_squared(j.at("amplitude").get<double>(),
                                           j.at("center").get<double>(),
                                           j.at("width").get<double>());
  }
  if (family == "compact_bump") {
    return profiles::Profile::compact_bump(j.at("amplitude").get<double>(),
                                           j.at("center").get<double>(),
                                           j.at("radius").get<double>());
  }
  if (family == "tabulated") {
    if (j.contains("csv")) {
      return profiles::Profile::tabulated_from_csv(
          j.at("csv").get<std::string>());
    }
    return profiles::Profile::tabulated(doubles(j.at("z")),
                                        doubles(j.at("values")));
  }
  throw scenario_error("scenario: unknown profile family '" + family + "'");
}

json profile_to(const profiles::Profile& p) {
  json j;
  std::visit(
      [&](const auto& fam) {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, profiles::Constant>) {
          j["family"] = "constant";
          j["value"] = fam.value;
        } else if constexpr (std::is_same_v<T, profiles::Gaussian>) {
          j["family"] = "gaussian";
          j["amplitude"] = fam.amplitude;
          j["center"] = fam.center;
          j["width"] = fam.width;
        } else if constexpr (std::is_same_v<T, profiles::Polynomial>) {
          j["family"] = "polynomial";
          j["coefficients"] = fam.coefficients;
        } else if constexpr (std::is_same_v<T, profiles::SechSquared>) {
          j["family"] = "sech_squared";
          j["amplitude"] = fam.amplitude;
          j["center"] = fam.center;
          j["width"] = fam.width;
        } else if constexpr (std::is_same_v<T, profiles::CompactBump>) {
          j["family"] = "compact_bump";
          j["amplitude"] = fam.amplitude;
          j["center"] = fam.center;
          j["radius"] = fam.radius;
        } else {
          j["family"] = "tabulated";
          j["z"] = fam.z;
          j["values"] = fam.values;
        }
      },
      p.family());
  return j;
}

std::vector<TimeFunction> time_functions_from(const json& j) {
  std::vector<TimeFunction> out;
  for (const auto& item : j) out.push_back(time_function_from(item));
  return out;
}

exact::LineSolutionSpec spec_from(const json& j) {
  exact::LineSolutionSpec spec;
  spec.line_coeffs = doubles(j.at("line_coeffs"));
  spec.dim = j.contains("dim") ? j.at("dim").get<int>()
                               : static_cast<int>(spec.line_coeffs.size());
  spec.xi = j.value("xi", 0.0);
  spec.delta = j.value("delta", 0);
  const auto& pr = j.at("pressure");
  spec.law = eos::PressureLaw::make(
      doubles(pr.at("gammas")),
      pr.contains("weights") ? doubles(pr.at("weights"))
                             : std::vector<double>{});
  spec.profile = profile_from(j.at("profile"));
  if (j.contains("entropy_anchor")) {
    spec.z0 = j.at("entropy_anchor").value("z0", 0.0);
    spec.g0 = j.at("entropy_anchor").value("g0", 1.0);
  }
  const auto window = doubles(j.at("phase_window"));
  if (window.size() != 2) {
    throw scenario_error("scenario: phase_window must have two entries");
  }
  spec.z_lo = window[0];
  spec.z_hi = window[1];
  if (j.contains("forces")) spec.forces = time_functions_from(j.at("forces"));
  if (j.contains("gauges")) spec.gauges = time_functions_from(j.at("gauges"));
  if (j.contains("initial_position")) {
    spec.a0 = doubles(j.at("initial_position"));
  }
  if (j.contains("initial_velocity")) {
    spec.a1 = doubles(j.at("initial_velocity"));
  }
  return spec;
}

json spec_to(const exact::LineSolutionSpec& spec) {
  json j;
  j["dim"] = spec.dim;
  j["line_coeffs"] = spec.line_coeffs;
  j["xi"] = spec.xi;
  j["delta"] = spec.delta;
  j["pressure"] = {{"gammas", spec.law.gammas}, {"weights", spec.law.weights}};
  j["profile"] = profile_to(spec.profile);
  j["entropy_anchor"] = {{"z0", spec.z0}, {"g0", spec.g0}};
  j["phase_window"] = {spec.z_lo, spec.z_hi};
  json forces = json::array(), gauges = json::array();
  for (const auto& f : spec.forces) forces.push_back(time_function_to(f));
  for (const auto& g : spec.gauges) gauges.push_back(time_function_to(g));
  j["forces"] = forces;
  j["gauges"] = gauges;
  j["initial_position"] = spec.a0;
  j["initial_velocity"] = spec.a1;
  return j;
}

Scenario scenario_from(const json& j) {
  Scenario s;
  s.name = j.at("name").get<std::string>();
  s.spec = spec_from(j.at("model"));
  if (j.contains("solve")) {
    const auto& sv = j.at("solve");
    s.solve_options.entropy_nodes =
        sv.value("entropy_nodes", s.solve_options.entropy_nodes);
    s.solve_options.ode_step = sv.value("ode_step", s.solve_options.ode_step);
    s.solve_options.entropy_by_ode =
        sv.value("entropy_by_ode", s.solve_options.entropy_by_ode);
    s.solve_options.t_lo = sv.value("t_lo", s.solve_options.t_lo);
    s.solve_options.t_hi = sv.value("t_hi", s.solve_options.t_hi);
  }
  if (j.contains("residual")) {
    const auto& r = j.at("residual");
    if (r.contains("t_samples")) s.residual.t_samples = doubles(r.at("t_samples"));
    if (r.contains("z_window")) {
      const auto w = doubles(r.at("z_window"));
      if (w.size() != 2) {
        throw scenario_error("scenario: residual.z_window must have two entries");
      }
      s.residual.z_lo = w[0];
      s.residual.z_hi = w[1];
    }
    s.residual.n_points = r.value("n_points", s.residual.n_points);
    s.residual.h = r.value("h", s.residual.h);
    s.residual.tolerance = r.value("tolerance", s.residual.tolerance);
  }
  if (j.contains("fv")) {
    const auto& f = j.at("fv");
    FVConfig fv;
    if (f.contains("grids")) fv.grids = f.at("grids").get<std::vector<int>>();
    const auto w = doubles(f.at("x_window"));
    if (w.size() != 2) {
      throw scenario_error("scenario: fv.x_window must have two entries");
    }
    fv.x_lo = w[0];
    fv.x_hi = w[1];
    fv.cfl = f.value("cfl", fv.cfl);
    fv.t_end = f.value("t_end", fv.t_end);
    if (f.contains("output_times")) fv.output_times = doubles(f.at("output_times"));
    s.fv = fv;
  }
  if (j.contains("mass_times")) s.mass_times = doubles(j.at("mass_times"));
  if (j.contains("trajectory")) {
    const auto& t = j.at("trajectory");
    s.trajectory.t_hi = t.value("t_hi", s.trajectory.t_hi);
    s.trajectory.n_samples = t.value("n_samples", s.trajectory.n_samples);
    s.trajectory.step = t.value("step", s.trajectory.step);
    if (t.contains("damping")) {
      for (const auto& d : t.at("damping")) {
        s.trajectory.damping.push_back(
            {d.at("beta").get<double>(), d.at("p").get<double>()});
      }
    }
  }
  s.output_dir = j.value("output_dir", s.output_dir);
  return s;
}

json scenario_to(const Scenario& s) {
  json j;
  j["name"] = s.name;
  j["model"] = spec_to(s.spec);
  j["solve"] = {{"entropy_nodes", s.solve_options.entropy_nodes},
                {"ode_step", s.solve_options.ode_step},
                {"entropy_by_ode", s.solve_options.entropy_by_ode},
                {"t_lo", s.solve_options.t_lo},
                {"t_hi", s.solve_options.t_hi}};
  j["residual"] = {{"t_samples", s.residual.t_samples},
                   {"z_window", {s.residual.z_lo, s.residual.z_hi}},
                   {"n_points", s.residual.n_points},
                   {"h", s.residual.h},
                   {"tolerance", s.residual.tolerance}};
  if (s.fv) {
    j["fv"] = {{"grids", s.fv->grids},
               {"x_window", {s.fv->x_lo, s.fv->x_hi}},
               {"cfl", s.fv->cfl},
               {"t_end", s.fv->t_end},
               {"output_times", s.fv->output_times}};
  }
  j["mass_times"] = s.mass_times;
  json damping = json::array();
  for (const auto& d : s.trajectory.damping) {
    damping.push_back({{"beta", d.beta}, {"p", d.p}});
  }
  j["trajectory"] = {{"t_hi", s.trajectory.t_hi},
                     {"n_samples", s.trajectory.n_samples},
                     {"step", s.trajectory.step},
                     {"damping", damping}};
  j["output_dir"] = s.output_dir;
  return j;
}

}  // namespace

Scenario parse(const std::string& json_text) {
  try {
    return scenario_from(json::parse(json_text));
  } catch (const json::exception& e) {
    throw scenario_error(std::string("scenario parse: ") + e.what());
  }
}

std::string serialize(const Scenario& s) {
  return scenario_to(s).dump(2) + "\n";
}

Scenario load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw scenario_error("scenario: cannot open file '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

}  // namespace linesol::scenario
