#include "nlscd/report.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace nlscd::report {

namespace {

// JSON has no inf/nan; emit null for those.
json num(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

json opt_restricted(const std::optional<solver::RestrictedResult>& r) {
  if (!r) return nullptr;
  return json{{"value", num(r->value)},
              {"grad_norm", num(r->grad_norm)},
              {"iterations", r->iterations},
              {"converged", r->converged}};
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_profile_csv(std::ostream& os, const grid::DecomposedState& u) {
  auto r = u.grid()->radii();
  auto g = u.green()->values();
  auto v = u.assemble();
  os << "r,phi,green,u\n";
  for (std::size_t i = 0; i < v.size(); ++i)
    os << format_double(r[i]) << ',' << format_double(u.phi()[i]) << ',' << format_double(g[i]) << ','
       << format_double(v[i]) << '\n';
}

void write_kernel_csv(std::ostream& os, const specfun::GreenParams& gp, const grid::RadialGrid& grid,
                      const specfun::SpecFunConfig& cfg) {
  os << "r,G,Phi,F\n";
  for (int i = 0; i < grid.size(); ++i) {
    double r = grid.r(i);
    double G = specfun::green_value(gp, r, cfg);
    double P = specfun::phi_kernel(gp, r, cfg);
    double F;
    try {
      F = specfun::f_kernel(gp, r, cfg);
    } catch (const std::overflow_error&) {
      F = std::numeric_limits<double>::infinity();
    }
    os << format_double(r) << ',' << format_double(G) << ',' << format_double(P) << ',' << format_double(F) << '\n';
  }
}

json params_json(const spectral::PhysParams& p) {
  json j{{"nu", p.nu}, {"alpha", p.alpha}, {"p", p.p}};
  if (p.is_mass())
    j["mu"] = p.mu();
  else
    j["omega"] = p.omega();
  return j;
}

json grid_json(const grid::GridSpec& s) {
  return json{{"nodes", s.nodes}, {"r_min", s.r_min}, {"r_max", s.r_max}, {"transition", s.transition}};
}

json solve_json(const solver::SolveConfig& c) {
  return json{{"restarts", c.restarts},         {"seed", c.seed},
              {"grad_tol", c.grad_tol},         {"residual_tol", c.residual_tol},
              {"max_outer_iters", c.max_outer_iters}, {"newton_steps", c.newton_steps},
              {"armijo_c", c.armijo_c}};
}

json envelope(const std::string& verb, json params, json results, json diagnostics, json citations) {
  json j;
  j["verb"] = verb;
  j["params"] = std::move(params);
  j["results"] = std::move(results);
  j["diagnostics"] = std::move(diagnostics);
  j["citations"] = std::move(citations);
  return j;
}

json spectrum_results(const spectral::SpectralReport& rep) {
  json res = json::array();
  for (const auto& r : rep.roots) res.push_back(num(r.residual));
  json lad = json::array(), fr = json::array();
  for (double x : rep.ladder) lad.push_back(num(x));
  for (double x : rep.friedrichs) fr.push_back(num(x));
  return json{{"omega_nu", num(rep.omega_nu)}, {"ladder", lad}, {"friedrichs", fr}, {"residuals", res}};
}

json spectrum_diagnostics(const spectral::SpectralReport& rep) {
  json roots = json::array();
  for (const auto& r : rep.roots)
    roots.push_back(json{{"lambda", num(r.value)},
                         {"lower", num(r.lower)},
                         {"upper", num(r.upper)},
                         {"iterations", r.iterations},
                         {"residual", num(r.residual)},
                         {"converged", r.converged},
                         {"message", r.message}});
  return json{{"all_converged", rep.all_converged}, {"roots", roots}};
}

json ground_state_results(const solver::GroundStateReport& r) {
  json j;
  j["mode"] = r.mode == solver::SolveMode::energy ? "mass" : "frequency";
  j["energy"] = num(r.energy);
  j["multiplier"] = num(r.multiplier);
  j["action"] = num(r.action);
  j["nehari"] = num(r.nehari);
  j["q_form"] = num(r.q_form);
  j["lp_norm_p"] = num(r.lp_norm_p);
  j["mass"] = num(r.mass);
  j["q"] = num(r.q);
  j["lambda"] = num(r.lambda);
  j["d_estimate"] = num(r.d_estimate);
  j["omega_nu"] = num(r.omega_nu);
  j["restricted_energy"] = opt_restricted(r.restricted_energy);
  j["restricted_action"] = opt_restricted(r.restricted_action);
  return j;
}

json ground_state_diagnostics(const solver::GroundStateReport& r) {
  json rs = json::array();
  for (const auto& s : r.restarts)
    rs.push_back(json{{"seed", s.seed}, {"value", num(s.value)}, {"iterations", s.iterations},
                      {"converged", s.converged}, {"message", s.message}});
  json j;
  j["converged"] = r.converged;
  j["message"] = r.message;
  j["grad_norm"] = num(r.grad_norm);
  j["iterations"] = r.iterations;
  j["descent_monotone"] = r.descent_monotone;
  j["multiplier_stationary"] = num(r.multiplier_stationary);
  j["res_pde"] = num(r.res_pde);
  j["res_bc"] = num(r.res_bc);
  j["positive"] = r.positive;
  j["monotone"] = r.monotone;
  j["log_slope"] = num(r.log_slope);
  j["log_slope_expected"] = num(r.log_slope_expected);
  j["restart_spread"] = num(r.restart_spread);
  j["restarts"] = rs;
  return j;
}

json cross_validation_json(const solver::CrossValidationReport& cv) {
  return json{{"omega", num(cv.omega)},
              {"omega_nu", num(cv.omega_nu)},
              {"action_of_ground_state", num(cv.action_of_ground_state)},
              {"action_minimum", num(cv.action_minimum)},
              {"action_rel_gap", num(cv.action_rel_gap)},
              {"multiplier_formula", num(cv.multiplier_formula)},
              {"multiplier_rel_err", num(cv.multiplier_rel_err)},
              {"energy_identity_rel_err", num(cv.energy_identity_rel_err)},
              {"action_pass", cv.action_pass},
              {"multiplier_pass", cv.multiplier_pass},
              {"omega_pass", cv.omega_pass},
              {"pass", cv.pass}};
}

json check_json(const verify::CheckResult& c) {
  return json{{"name", c.name},     {"params", c.params},   {"lhs", num(c.lhs)},
              {"rhs", num(c.rhs)},  {"margin", num(c.margin)}, {"abs_tol", num(c.abs_tol)},
              {"pass", c.pass},     {"samples", c.samples}, {"citation", c.citation}};
}

json verify_results(const verify::SuiteReport& rep) {
  json checks = json::array();
  for (const auto& c : rep.results) checks.push_back(check_json(c));
  return json{{"pass", rep.pass}, {"failed", rep.failed}, {"checks", checks}};
}

json verify_diagnostics(const verify::SuiteReport& rep) {
  const auto& c = rep.calibration;
  json cal;
  if (c.gn_constant > 0)
    cal["gn_constant"] = json{{"value", c.gn_constant}, {"p", c.gn_p}, {"family", c.gn_family}};
  if (c.hardy_constant > 0) cal["hardy_constant"] = json{{"value", c.hardy_constant}, {"family", c.hardy_family}};
  return json{{"calibration", cal.is_null() ? json::object() : cal}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace nlscd::report
