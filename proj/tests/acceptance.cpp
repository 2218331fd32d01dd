// Acceptance run: one PASS/FAIL line per criterion.

#include "nlscd/cli.hpp"
#include "nlscd/functionals.hpp"
#include "nlscd/solver.hpp"
#include "nlscd/spectral.hpp"
#include "nlscd/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace nlscd;
using spectral::PhysParams;
using Clock = std::chrono::steady_clock;
constexpr double pi = std::numbers::pi;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

Outcome green_vs_bessel() {
  Outcome o;
  auto t0 = Clock::now();
  double worst = 0;
  for (double lambda : {1.0, 4.0}) {
    specfun::GreenParams gp(lambda, 0.0);
    for (int k = 0; k <= 400; ++k) {
      double r = 1e-3 * std::pow(1e4, k / 400.0);
      double ref = std::cyl_bessel_k(0.0, std::sqrt(lambda) * r) / (2 * pi);
      worst = std::max(worst, std::abs(specfun::green_value(gp, r) - ref) / ref);
    }
  }
  double t = seconds_since(t0);
  o.require(worst < 1e-8, fmt("max rel err %.3g", worst));
  o.require(t < 5, fmt("runtime %.2fs", t));
  o.detail += fmt(" [max rel err %.2e, %.2fs]", worst, t);
  return o;
}

Outcome friedrichs_poles() {
  Outcome o;
  auto t0 = Clock::now();
  double worst = 0;
  for (double nu : {-0.5, -1.0, -2.0}) {
    auto poles = spectral::locate_theta_poles(nu, 6);
    auto fr = spectral::friedrichs_eigenvalues(nu, 5);
    if (poles.size() != 6) {
      o.require(false, "missing poles");
      continue;
    }
    for (int n = 0; n < 6; ++n) worst = std::max(worst, std::abs(poles[n] - fr[n]));
  }
  double t = seconds_since(t0);
  o.require(worst < 1e-10, fmt("max abs err %.3g", worst));
  o.require(t < 5, fmt("runtime %.2fs", t));
  o.detail += fmt(" [max abs err %.2e, %.2fs]", worst, t);
  return o;
}

Outcome theta_properties() {
  Outcome o;
  auto t0 = Clock::now();
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  double ratio_worst = 0;
  for (double nu : {-0.5, -1.0, -2.0}) {
    std::vector<double> ls(1000);
    for (auto& l : ls) l = nu * nu * (1.0 + std::pow(10.0, -4.0 + 14.0 * U(rng)));
    for (const auto& r : verify::check_theta_props(nu, ls)) {
      o.require(r.pass, r.name + " " + r.params);
      if (r.name == "theta_asymptote") ratio_worst = std::max(ratio_worst, std::abs(r.lhs));
    }
  }
  double t = seconds_since(t0);
  o.require(t < 5, fmt("runtime %.2fs", t));
  o.detail += fmt(" [asymptote |ratio-1| %.4f, %.2fs]", ratio_worst, t);
  return o;
}

Outcome omega_root() {
  Outcome o;
  double worst = 0, inv_worst = 0;
  for (double nu : {-0.25, -0.5, -1.0, -2.0, -3.0})
    for (double alpha : {-1.0, -0.5, 0.0, 1.0, 2.0}) {
      double w = spectral::solve_omega_nu(nu, alpha);
      worst = std::max(worst, std::abs(alpha + spectral::theta(w, nu)));
      o.require(w > nu * nu, fmt("omega_nu <= nu^2 at nu=%g alpha=%g", nu, alpha));
    }
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int k = 0; k < 50; ++k) {
    double nu = -0.2 - 2.8 * U(rng), l0 = nu * nu * (1 + std::pow(10.0, -3 + 5 * U(rng)));
    double l = spectral::solve_omega_nu(nu, -spectral::theta(l0, nu));
    inv_worst = std::max(inv_worst, std::abs(l - l0) / l0);
  }
  o.require(worst < 1e-12, fmt("residual %.3g", worst));
  o.require(inv_worst < 1e-10, fmt("inverse rel err %.3g", inv_worst));
  o.detail += fmt(" [residual %.2e, inverse %.2e]", worst, inv_worst);
  return o;
}

Outcome form_invariance() {
  Outcome o;
  auto g = std::make_shared<grid::RadialGrid>(grid::GridSpec{});
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  double worst = 0;
  for (int k = 0; k < 50; ++k) {
    double nu = -0.3 - 1.5 * U(rng), l1 = nu * nu + 0.5 + 3 * U(rng), l2 = l1 + 0.5 + 5 * U(rng);
    double c1 = 2 * U(rng) - 0.5, c2 = 2 * U(rng) - 1, b1 = 0.5 + 2 * U(rng), b2 = 0.3 + U(rng);
    auto phi = grid::RadialFunction::sample(
        g, [&](double r) { return (c1 * std::exp(-b1 * r) + c2 * r * std::exp(-b2 * r)) * (1 - r / g->r_max()); });
    grid::DecomposedState u(phi, 0.2 + U(rng), grid::make_green(g, l1, nu));
    auto v = u.redecompose(grid::make_green(g, l2, nu));
    auto params = PhysParams::frequency(nu, 2 * U(rng) - 1, 2.5 + 2 * U(rng), 1 + 5 * U(rng));
    auto rel = [](double a, double b) { return std::abs(a - b) / std::abs(b); };
    worst = std::max({worst, rel(functionals::q_form(v, params).q_form, functionals::q_form(u, params).q_form),
                      rel(functionals::energy(v, params), functionals::energy(u, params)),
                      rel(functionals::action(v, params), functionals::action(u, params))});
  }
  o.require(worst < 1e-6, fmt("max rel diff %.3g", worst));
  o.detail += fmt(" [max rel diff %.2e over 50 states]", worst);
  return o;
}

Outcome inequality_suite() {
  Outcome o;
  verify::VerifyConfig cfg;
  cfg.only = {"green", "modified_gn", "hardy", "theta"};
  auto rep = verify::run_all(cfg);
  double worst = std::numeric_limits<double>::infinity();
  for (const auto& r : rep.results) {
    o.require(r.pass, r.name + " " + r.params);
    worst = std::min(worst, r.margin);
  }
  o.detail += fmt(" [%g checks, min margin %.3g]", static_cast<double>(rep.results.size()), worst);
  return o;
}

// Shared by criteria 7 and 9.
const solver::GroundStateReport& mass_ground_state(double* runtime = nullptr) {
  static double t = 0;
  static const solver::GroundStateReport rep = [] {
    auto t0 = Clock::now();
    auto r = solver::minimize_energy(PhysParams::mass(-1.0, 0.0, 3.0, 1.0), grid::GridSpec{});
    t = seconds_since(t0);
    return r;
  }();
  if (runtime) *runtime = t;
  return rep;
}

Outcome ground_state() {
  Outcome o;
  double t;
  const auto& r = mass_ground_state(&t);
  o.require(r.converged, "not converged: " + r.message);
  o.require(r.grad_norm < 1e-6, fmt("grad norm %.3g", r.grad_norm));
  o.require(r.positive, "u not positive");
  o.require(r.monotone, "u not nonincreasing");
  double slope_err = std::abs(r.log_slope - r.q / (2 * pi)) / (r.q / (2 * pi));
  o.require(slope_err < 0.02, fmt("log slope off by %.3g", slope_err));
  o.require(r.res_pde < 1e-5, fmt("res_pde %.3g", r.res_pde));
  o.require(r.res_bc < 1e-4, fmt("res_bc %.3g", r.res_bc));
  double E = r.restricted_energy ? r.restricted_energy->value : 0.0;
  o.require(r.restricted_energy && r.restricted_energy->converged, "restricted energy not converged");
  o.require(E - r.energy > 1e-4, fmt("F - E margin %.3g", E - r.energy));
  o.require(-E > 1e-4, fmt("E margin %.3g", -E));
  double mult_err = std::abs(r.multiplier_stationary - r.multiplier) / std::abs(r.multiplier);
  o.require(mult_err < 1e-6, fmt("multiplier rel err %.3g", mult_err));
  o.require(t < 60, fmt("runtime %.1fs", t));
  o.detail += fmt(" [F=%.6f E=%.6f omega=%.6f,", r.energy, E, r.multiplier);
  o.detail += fmt(" gn=%.1e res_pde=%.1e res_bc=%.1e,", r.grad_norm, r.res_pde, r.res_bc);
  o.detail += fmt(" slope err %.1e, %.2fs]", slope_err, t);
  return o;
}

Outcome action_minimisers() {
  Outcome o;
  double wn = spectral::solve_omega_nu(-1.0, 0.0);
  for (double p : {3.0, 4.0, 5.0}) {
    auto t0 = Clock::now();
    auto r = solver::minimize_action(PhysParams::frequency(-1.0, 0.0, p, 2 * wn), grid::GridSpec{});
    double t = seconds_since(t0);
    std::string tag = fmt("p=%g", p);
    o.require(r.converged, tag + " not converged: " + r.message);
    double irel = std::abs(r.nehari) / r.lp_norm_p;
    o.require(irel < 1e-8, tag + fmt(" |I| rel %.3g", irel));
    double dt = r.restricted_action ? r.restricted_action->value : 0.0;
    o.require(r.restricted_action && r.restricted_action->converged, tag + " restricted action not converged");
    o.require(dt - r.action > 0, tag + fmt(" d~ - d = %.3g", dt - r.action));
    o.require(r.q != 0.0, tag + " q = 0");
    o.require(r.state && grid::mass(r.state->phi()) > 0, tag + " phi = 0");
    o.require(t < 60, tag + fmt(" runtime %.1fs", t));
    o.detail += fmt(" [p=%g d=%.6g d~=%.6g,", p, r.action, dt) + fmt(" |I| %.1e, %.2fs]", irel, t);
  }
  return o;
}

Outcome cross_validation() {
  Outcome o;
  auto cv = solver::cross_validate(mass_ground_state(), PhysParams::mass(-1.0, 0.0, 3.0, 1.0), grid::GridSpec{});
  o.require(cv.action_rel_gap < 1e-3, fmt("action gap %.3g", cv.action_rel_gap));
  o.require(cv.omega > cv.omega_nu, fmt("omega %.6g <= omega_nu %.6g", cv.omega, cv.omega_nu));
  o.detail += fmt(" [omega=%.6f omega_nu=%.6f gap %.1e]", cv.omega, cv.omega_nu, cv.action_rel_gap);
  return o;
}

Outcome rearrangement() {
  Outcome o;
  verify::VerifyConfig cfg;
  cfg.only = {"rearrangement"};
  cfg.samples = 100;
  auto rep = verify::run_all(cfg);
  for (const auto& r : rep.results) {
    o.require(r.pass, r.name + " " + r.params);
    o.detail += " [" + r.name + fmt(" margin %.3g over %g pairs]", r.margin, r.samples);
  }
  o.require(rep.results.size() == 4, "missing rearrangement checks");
  return o;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

Outcome determinism() {
  Outcome o;
  auto dir = std::filesystem::temp_directory_path() / "nlscd_acceptance";
  std::filesystem::create_directories(dir);
  struct Verb {
    std::vector<std::string> args;
    bool csv;
  };
  std::vector<Verb> verbs{
      {{"spectrum", "--nu", "-1", "--alpha", "0", "--count", "5"}, false},
      {{"groundstate", "--nu", "-1", "--alpha", "0", "--p", "3", "--mu", "1"}, true},
      {{"actionmin", "--nu", "-1", "--alpha", "0", "--p", "4", "--omega", "20.8"}, true},
      {{"verify", "--only", "theta,rearrangement,hardy", "--samples", "20"}, false},
      {{"kernel-dump", "--nu", "-1", "--lambda", "4"}, true},
  };
  for (const auto& v : verbs) {
    std::string out[2], csv[2];
    for (int k = 0; k < 2; ++k) {
      auto args = v.args;
      auto jp = dir / ("run" + std::to_string(k) + ".json"), cp = dir / ("run" + std::to_string(k) + ".csv");
      args.insert(args.end(), {"--json", jp.string()});
      if (v.csv) args.insert(args.end(), {"--csv", cp.string()});
      args.insert(args.begin(), "nlscd");
      std::vector<const char*> argv;
      for (const auto& a : args) argv.push_back(a.c_str());
      std::ostringstream so, se;
      int code = cli::parse_and_dispatch(static_cast<int>(argv.size()), argv.data(), so, se);
      o.require(code == 0, v.args[0] + " exit " + std::to_string(code) + " " + se.str());
      out[k] = slurp(jp);
      csv[k] = v.csv ? slurp(cp) : "";
    }
    o.require(!out[0].empty() && out[0] == out[1], v.args[0] + " JSON differs");
    o.require(csv[0] == csv[1], v.args[0] + " CSV differs");
    o.detail += " [" + v.args[0] + fmt(": %g + %g bytes identical]", static_cast<double>(out[0].size()),
                                       static_cast<double>(csv[0].size()));
  }
  return o;
}

}  // namespace

int main() {
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"green function vs Bessel K0", green_vs_bessel},
      {"theta poles on the Friedrichs ladder", friedrichs_poles},
      {"theta monotone, bounded, logarithmic", theta_properties},
      {"omega_nu root and inverse construction", omega_root},
      {"form invariance under re-decomposition", form_invariance},
      {"inequality suite", inequality_suite},
      {"mass-constrained ground state", ground_state},
      {"action minimisers at 2 omega_nu", action_minimisers},
      {"mass/action cross-validation", cross_validation},
      {"rearrangement", rearrangement},
      {"determinism of CLI output", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failed += !o.pass;
    std::printf("criterion %2zu %s: %s%s\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
