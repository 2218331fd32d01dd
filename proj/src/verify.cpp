#include "nlscd/verify.hpp"

#include "nlscd/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <set>
#include <stdexcept>

namespace nlscd::verify {

namespace {

constexpr double pi = std::numbers::pi;

std::string fmt(const char* f, auto... a) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a...);
  return buf;
}

const char* cite_green_s = "L^s bound on the Green function with explicit C_{lambda,nu}";
const char* cite_green_2 = "L^2 bound on the Green function, constant C_p";
const char* cite_green_p = "L^p bound on the Green function, constant C~_p";
const char* cite_gn = "modified Gagliardo-Nirenberg inequality for u = phi + q G";
const char* cite_hardy = "quasi-Hardy inequality with c_eps = c eps (1+|ln eps|)^2";
const char* cite_theta_mono = "theta_{lambda,nu} strictly increasing in lambda";
const char* cite_theta_bounds = "two-sided bound on theta from digamma inequalities";
const char* cite_theta_asym = "theta ~ ln(lambda)/(4 pi) as lambda -> infinity";
const char* cite_equi = "rearrangement is equimeasurable";
const char* cite_hl = "Hardy-Littlewood inequality";
const char* cite_fg = "int |f+g|^p <= int |f*+g*|^p";
const char* cite_ps = "Polya-Szego inequality";
const char* cite_s2 = "S = (p-2)/(2p) ||v||_p^p + I/2 = (p-2)/(2p)(Q + omega ||v||^2) + I/p";
const char* cite_dnorm = "I(v) < 0 implies ||v||_p^p > 2p/(p-2) d(omega)";
const char* cite_levels = "F(mu) < E(mu) < 0";
const char* cite_omega = "ground-state multiplier exceeds omega_nu";
const char* cite_mult = "2F(u) - (p-2)/p ||u||_p^p = -omega ||u||^2";
const char* cite_dd = "d(omega) < d~(omega)";
const char* cite_dpos = "0 <= d(omega)";
const char* cite_qphi = "action minimisers have q != 0 and phi != 0";
const char* cite_shape = "minimisers are positive and radially nonincreasing";

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(std::uint64_t s) : gen(s) {}
  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(gen); }
  double log_uniform(double a, double b) { return std::exp(uniform(std::log(a), std::log(b))); }
  int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(gen); }
};

double rel_margin(const CheckResult& c) {
  double scale = std::max({std::fabs(c.lhs), std::fabs(c.rhs), 1e-300});
  return c.margin / scale;
}

// Worst sample of a family; failing samples take precedence.
CheckResult worst_of(const std::vector<CheckResult>& v) {
  if (v.empty()) throw std::logic_error("worst_of: empty family");
  const CheckResult* w = &v.front();
  for (const auto& c : v) {
    if (w->pass && !c.pass) {
      w = &c;
      continue;
    }
    if (w->pass == c.pass && rel_margin(c) < rel_margin(*w)) w = &c;
  }
  CheckResult out = *w;
  out.samples = static_cast<int>(v.size());
  return out;
}

grid::GridPtr green_grid(double lambda, double s) {
  grid::GridSpec gs;
  gs.r_max = std::max(40.0 / (s * std::sqrt(lambda)), 1e-3);
  gs.transition = std::min(1.0, 0.1 * gs.r_max);
  gs.r_min = std::min(1e-6, 1e-6 * gs.r_max);
  return std::make_shared<const grid::RadialGrid>(gs);
}

// nonnegative profile from the test family: A r^a e^{-b r} + B e^{-c r^2}
grid::RadialFunction random_profile(const grid::GridPtr& g, Rng& rng) {
  double A = rng.log_uniform(0.01, 10.0), a = rng.uniform(0.0, 2.0), b = rng.log_uniform(0.5, 4.0);
  double B = rng.log_uniform(0.01, 10.0), c = rng.log_uniform(0.1, 4.0);
  return grid::RadialFunction::sample(
      g, [=](double r) { return A * std::pow(r, a) * std::exp(-b * r) + B * std::exp(-c * r * r); },
      grid::Smoothness::h1_component);
}

grid::RadialFunction random_bumps(const grid::GridPtr& g, Rng& rng) {
  int k = rng.integer(1, 3);
  std::vector<double> A(k), c(k), s(k);
  for (int i = 0; i < k; ++i) {
    A[i] = rng.uniform(0.1, 2.0);
    c[i] = rng.uniform(0.0, 5.0);
    s[i] = rng.uniform(0.3, 2.0);
  }
  return grid::RadialFunction::sample(g, [&](double r) {
    double v = 0;
    for (int i = 0; i < k; ++i) v += A[i] * std::exp(-0.5 * std::pow((r - c[i]) / s[i], 2));
    return v;
  });
}

}  // namespace

CheckResult make_result(std::string name, std::string params, double lhs, double rhs, double abs_tol,
                        std::string citation) {
  CheckResult c;
  c.name = std::move(name);
  c.params = std::move(params);
  c.lhs = lhs;
  c.rhs = rhs;
  c.margin = rhs - lhs;
  c.abs_tol = abs_tol;
  c.pass = std::isfinite(c.margin) ? c.margin >= -abs_tol : (lhs < rhs);
  if (abs_tol < 0.0 && std::isfinite(c.margin)) c.pass = c.margin > -abs_tol;
  c.citation = std::move(citation);
  return c;
}

double green_norm_constant(double s, double sigma, double lambda, double nu) {
  double sl = std::sqrt(lambda);
  double t1 = std::pow(2.0 * sl / (sl + nu), s) / (std::pow(s, sigma * s) * std::pow(lambda, 0.5 * sigma * s));
  double t2 = std::pow(sigma, s * (sigma - 1.0)) * std::exp(-sigma * s) * (1.0 / (2.0 - sigma * s) + std::exp(-1.0));
  return std::pow(pi, 1.0 - s) / std::pow(s, 2.0 - sigma * s) * (t1 + t2);
}

double green_l2_constant(double p) {
  return 1.0 / (std::pow(2.0, 0.5 * p) * pi) *
         (std::pow(2.0, 0.5 * (p + 4.0)) +
          std::pow(4.0 / (4.0 - p), 0.5 * p) * std::exp(-0.5 * (4.0 - p)) * (2.0 / p + std::exp(-1.0)));
}

double green_lp_constant(double p) {
  return std::pow(pi, 1.0 - p) / std::pow(p, 0.5 * p) *
         (std::pow(4.0, p) / std::pow(p, (4.0 - p) / p) +
          std::pow(2.0 * p / (4.0 - p), 0.5 * (3.0 * p - 4.0)) * std::exp(-0.5 * (4.0 - p)) *
              (2.0 / p + std::exp(-1.0)));
}

CheckResult check_green_norm_bound(double s, double sigma, double lambda, double nu,
                                   const specfun::SpecFunConfig& cfg) {
  if (!(s > 1.0) || !(sigma > 0.0 && sigma < 2.0 / s) || !(nu < 0.0) || !(lambda > nu * nu))
    throw std::invalid_argument("check_green_norm_bound: need s > 1, 0 < sigma < 2/s, nu < 0, lambda > nu^2");
  auto g = green_grid(lambda, s);
  auto n = specfun::green_norm(specfun::GreenParams(lambda, nu), s, *g, cfg);
  double rhs = green_norm_constant(s, sigma, lambda, nu) / std::pow(lambda, 1.0 - 0.5 * sigma * s);
  return make_result("green_norm_bound", fmt("s=%.6g sigma=%.6g lambda=%.6g nu=%.6g", s, sigma, lambda, nu),
                     n.value, rhs, 1e-10 * n.value, cite_green_s);
}

std::pair<CheckResult, CheckResult> check_gla2_glap(double p, double lambda, double nu,
                                                    const specfun::SpecFunConfig& cfg) {
  if (!(p > 2.0 && p < 4.0) || !(nu < 0.0) || !(lambda >= std::max(1.0, 4.0 * nu * nu)))
    throw std::invalid_argument("check_gla2_glap: need 2 < p < 4, nu < 0, lambda >= max(1, 4 nu^2)");
  specfun::GreenParams gp(lambda, nu);
  auto g2 = green_grid(lambda, 2.0);
  auto gpp = green_grid(lambda, p);
  double n2 = specfun::green_norm(gp, 2.0, *g2, cfg).value;
  double np = specfun::green_norm(gp, p, *gpp, cfg).value;
  double scale = std::pow(lambda, -0.25 * p);
  std::string prm = fmt("p=%.6g lambda=%.6g nu=%.6g", p, lambda, nu);
  return {make_result("green_l2_bound", prm, n2, green_l2_constant(p) * scale, 1e-10 * n2, cite_green_2),
          make_result("green_lp_bound", prm, np, green_lp_constant(p) * scale, 1e-10 * np, cite_green_p)};
}

double gn_ratio(const grid::RadialFunction& phi, double p) {
  double np = std::pow(grid::lp_norm(phi, p), p);
  double gr = grid::grad_norm_sq(phi);
  return np / (std::pow(gr, 0.5 * (p - 2.0)) * grid::mass(phi));
}

double calibrate_gn_constant(double p, const grid::GridPtr& g) {
  double best = gn_ratio(grid::RadialFunction::sample(g, [](double r) { return std::exp(-r * r); }), p);
  for (int k = 0; k <= 16; ++k) {
    double a = 0.25 * k;
    auto f = grid::RadialFunction::sample(g, [a](double r) { return std::pow(r, a) * std::exp(-r); });
    best = std::max(best, gn_ratio(f, p));
  }
  return 2.0 * best;
}

CheckResult check_modified_gn(const grid::DecomposedState& u, const spectral::PhysParams& params, double kp,
                              const specfun::SpecFunConfig&) {
  const double p = params.p, nu = params.nu;
  if (!(p > 2.0 && p < 4.0) || !(nu < 0.0)) throw std::invalid_argument("check_modified_gn: need 2 < p < 4, nu < 0");
  double q = std::fabs(u.q());
  if (q == 0.0) throw std::invalid_argument("check_modified_gn: q must be nonzero");
  double m = grid::mass(u);
  double lam_min = std::max({1.0, 4.0 * nu * nu, q * q / std::pow(m, 4.0 / p)});
  if (u.lambda() < lam_min * (1.0 - 1e-12))
    throw std::invalid_argument("check_modified_gn: lambda below max(1, 4 nu^2, q^2/||u||^{8/p})");
  double lhs = std::pow(grid::lp_norm(u, p), p);
  double gphi = std::sqrt(grid::grad_norm_sq(u.phi()));
  double rhs = std::pow(2.0, p - 1.0) *
               (kp * (1.0 + green_l2_constant(p) * std::pow(q, 0.5 * (4.0 - p))) * std::pow(gphi, p - 2.0) +
                green_lp_constant(p) * std::pow(q, 0.5 * p)) *
               m;
  return make_result("modified_gn", fmt("p=%.6g nu=%.6g q=%.6g lambda=%.6g", p, nu, u.q(), u.lambda()), lhs, rhs,
                     1e-10 * lhs, cite_gn);
}

double hardy_ratio(const grid::RadialFunction& phi) {
  const auto& g = phi.mesh();
  auto w = g.area_weights();
  auto r = g.radii();
  long double s = 0;
  // node 0 carries the inner disc; integrate 2 pi / (r (1+|ln r|)^2) there exactly
  double rho = std::sqrt(w[0] / pi);
  s += phi[0] * phi[0] * 2.0 * pi / (1.0 + std::fabs(std::log(rho)));
  for (int i = 1; i < g.size() && r[i] <= 1.0; ++i) {
    double l = 1.0 + std::fabs(std::log(r[i]));
    s += w[i] * phi[i] * phi[i] / (r[i] * r[i] * l * l);
  }
  double h1 = grid::grad_norm_sq(phi) + grid::mass(phi);
  return static_cast<double>(s) / h1;
}

double calibrate_hardy_constant(const grid::GridPtr& g) {
  double best = 0.0;
  for (int k = 0; k <= 30; ++k) {
    double b = std::pow(10.0, -1.0 + 0.1 * k);
    best = std::max(best, hardy_ratio(grid::RadialFunction::sample(g, [b](double r) { return std::exp(-b * r * r); })));
    for (double a : {0.0, 0.1, 0.5, 1.0, 2.0})
      best = std::max(best, hardy_ratio(grid::RadialFunction::sample(
                                g, [a, b](double r) { return std::pow(r, a) * std::exp(-b * r); })));
  }
  return 2.0 * best;
}

CheckResult check_hardy(const grid::RadialFunction& phi, double epsilon, double c) {
  if (!(epsilon > 0.0 && epsilon <= std::exp(-1.0) * (1.0 + 1e-15)))
    throw std::invalid_argument("check_hardy: need 0 < epsilon <= 1/e");
  double lhs = grid::coulomb_term(phi);
  double m = grid::mass(phi);
  double h1 = grid::grad_norm_sq(phi) + m;
  double l = 1.0 + std::fabs(std::log(epsilon));
  double rhs = c * epsilon * l * l * h1 + m / epsilon;
  return make_result("hardy", fmt("eps=%.6g c=%.6g", epsilon, c), lhs, rhs, 1e-10 * lhs, cite_hardy);
}

std::vector<CheckResult> check_theta_props(double nu, std::vector<double> lambdas, const specfun::SpecFunConfig& cfg) {
  if (!(nu < 0.0)) throw std::invalid_argument("check_theta_props: need nu < 0");
  std::sort(lambdas.begin(), lambdas.end());
  lambdas.erase(std::unique(lambdas.begin(), lambdas.end()), lambdas.end());
  std::vector<CheckResult> out;
  std::vector<double> th(lambdas.size());
  for (std::size_t k = 0; k < lambdas.size(); ++k) {
    if (!(lambdas[k] > nu * nu)) throw std::invalid_argument("check_theta_props: samples must exceed nu^2");
    th[k] = spectral::theta(lambdas[k], nu, cfg);
    auto b = spectral::theta_bounds(lambdas[k], nu);
    double tol = 1e-12 * std::max(1.0, std::fabs(th[k]));
    std::string prm = fmt("nu=%.6g lambda=%.10g", nu, lambdas[k]);
    out.push_back(make_result("theta_sandwich_lower", prm, b.lower, th[k], tol, cite_theta_bounds));
    out.push_back(make_result("theta_sandwich_upper", prm, th[k], b.upper, tol, cite_theta_bounds));
  }
  for (std::size_t k = 0; k + 1 < lambdas.size(); ++k)
    out.push_back(make_result("theta_monotone", fmt("nu=%.6g lambda=%.10g..%.10g", nu, lambdas[k], lambdas[k + 1]),
                              th[k], th[k + 1], -1e-300, cite_theta_mono));
  const double big = 1e12;
  double ratio = spectral::theta(big, nu, cfg) / (std::log(big) / (4.0 * pi));
  out.push_back(make_result("theta_asymptote", fmt("nu=%.6g lambda=1e12 ratio=%.8g", nu, ratio),
                            std::fabs(ratio - 1.0), 0.01, 0.0, cite_theta_asym));
  return out;
}

std::vector<CheckResult> check_rearrangement(const grid::RadialFunction& f, const grid::RadialFunction& g, double p) {
  std::vector<CheckResult> out;
  const auto& mesh = f.mesh();
  auto w = mesh.area_weights();
  auto fs = grid::rearrange(f);
  auto gs = grid::rearrange(g);

  double fmax = *std::max_element(f.values().begin(), f.values().end());
  double total = 0;
  for (double x : w) total += x;
  std::vector<CheckResult> eq;
  for (int k = 1; k < 50; ++k) {
    double t = fmax * k / 50.0;
    double m0 = grid::level_set_measure(f, t), m1 = grid::level_set_measure(fs, t);
    int j = 0;
    while (j < fs.size() && fs[j] > t) ++j;
    double cell = 0.5 * std::max(j > 0 ? w[j - 1] : 0.0, j < fs.size() ? w[j] : 0.0);
    eq.push_back(make_result("equimeasurability", fmt("t=%.6g", t), std::fabs(m0 - m1), cell, 1e-12 * total, cite_equi));
  }
  out.push_back(worst_of(eq));

  auto dot = [&](const grid::RadialFunction& a, const grid::RadialFunction& b) {
    long double s = 0;
    for (int i = 0; i < a.size(); ++i) s += w[i] * a[i] * b[i];
    return static_cast<double>(s);
  };
  auto sum_p = [&](const grid::RadialFunction& a, const grid::RadialFunction& b) {
    long double s = 0;
    for (int i = 0; i < a.size(); ++i) s += w[i] * std::pow(std::fabs(a[i] + b[i]), p);
    return static_cast<double>(s);
  };
  double hl_l = dot(f, g), hl_r = dot(fs, gs);
  out.push_back(make_result("hardy_littlewood", "", hl_l, hl_r, 1e-3 * hl_r, cite_hl));
  double fg_l = sum_p(f, g), fg_r = sum_p(fs, gs);
  out.push_back(make_result("rearranged_sum", fmt("p=%.6g", p), fg_l, fg_r, 1e-3 * fg_r, cite_fg));
  double ps_l = std::sqrt(grid::grad_norm_sq(fs)), ps_r = std::sqrt(grid::grad_norm_sq(f));
  out.push_back(make_result("polya_szego", "", ps_l, ps_r, 0.01 * ps_r, cite_ps));
  return out;
}

std::vector<CheckResult> check_orderings(const std::vector<OrderingCase>& cases, const grid::GridSpec& gspec,
                                         const solver::SolveConfig& cfg) {
  std::vector<CheckResult> out;
  for (const auto& oc : cases) {
    std::string prm = fmt("nu=%.6g alpha=%.6g p=%.6g", oc.nu, oc.alpha, oc.p);
    double omega_nu = spectral::solve_omega_nu(oc.nu, oc.alpha, cfg.specfun);

    if (oc.mu > 0.0) {
      auto mp = spectral::PhysParams::mass(oc.nu, oc.alpha, oc.p, oc.mu);
      auto gs = solver::minimize_energy(mp, gspec, cfg);
      if (!gs.converged || !gs.restricted_energy || !gs.restricted_energy->converged)
        throw std::runtime_error("check_orderings: ground-state solve did not converge (" + prm + ")");
      std::string mprm = prm + fmt(" mu=%.6g", oc.mu);
      double F = gs.energy, E = gs.restricted_energy->value;
      out.push_back(make_result("energy_levels_lower", mprm, F, E, -1e-6 * std::max(1.0, std::fabs(E)), cite_levels));
      out.push_back(make_result("energy_levels_upper", mprm, E, 0.0, -1e-8 * std::max(1.0, std::fabs(E)), cite_levels));
      out.push_back(make_result("omega_threshold", mprm, omega_nu, gs.multiplier, -1e-8 * omega_nu, cite_omega));
      double om = gs.multiplier_stationary;
      double id = std::fabs(2.0 * F - (oc.p - 2.0) / oc.p * gs.lp_norm_p + om * gs.mass);
      out.push_back(make_result("multiplier_identity", mprm, id, 1e-6 * std::fabs(om * gs.mass), 0.0, cite_mult));
      int bad = (gs.positive ? 0 : 1) + (gs.monotone ? 0 : 1);
      out.push_back(make_result("minimizer_shape", mprm + " (ground state)", bad, 0.0, 0.0, cite_shape));
      if (gs.restricted_action && gs.restricted_action->converged) {
        double d = gs.action;
        double dt = gs.restricted_action->value;
        out.push_back(make_result("action_levels", mprm + fmt(" omega=%.8g", gs.multiplier), d, dt,
                                  -1e-6 * std::max(1.0, dt), cite_dd));
      }
    }

    double omega = 2.0 * omega_nu;
    auto fp = spectral::PhysParams::frequency(oc.nu, oc.alpha, oc.p, omega);
    auto am = solver::minimize_action(fp, gspec, cfg);
    if (!am.converged || !am.restricted_action || !am.restricted_action->converged)
      throw std::runtime_error("check_orderings: action solve did not converge (" + prm + ")");
    std::string aprm = prm + fmt(" omega=%.8g", omega);
    double d = am.action, dt = am.restricted_action->value;
    out.push_back(make_result("action_levels", aprm, d, dt, -1e-6 * std::max(1.0, dt), cite_dd));
    out.push_back(make_result("action_nonneg", aprm, 0.0, d, 0.0, cite_dpos));
    double phin = std::sqrt(grid::mass(am.state->phi()));
    out.push_back(make_result("charge_nonzero", aprm, 0.0, std::fabs(am.q), -1e-8, cite_qphi));
    out.push_back(make_result("regular_part_nonzero", aprm, 0.0, phin, -1e-8, cite_qphi));
    int bad = (am.positive ? 0 : 1) + (am.monotone ? 0 : 1);
    out.push_back(make_result("minimizer_shape", aprm + " (action minimiser)", bad, 0.0, 0.0, cite_shape));

    // states with I < 0 lie above the level 2p/(p-2) d
    Rng rng(cfg.seed + 1000);
    std::vector<CheckResult> ns, ai;
    auto grid = am.state->grid();
    auto green = am.state->green();
    for (int k = 0; k < 20; ++k) {
      auto phi = random_profile(grid, rng);
      double q = rng.log_uniform(0.01, 10.0);
      grid::DecomposedState u(phi, q, green);
      auto proj = functionals::nehari_project(u, fp, cfg.specfun);
      auto v = u.scaled(proj.beta * rng.uniform(1.001, 2.0));
      double I = functionals::nehari(v, fp, cfg.specfun);
      double np = std::pow(grid::lp_norm(v, oc.p), oc.p);
      double level = 2.0 * oc.p / (oc.p - 2.0) * d;
      if (I < 0.0)
        ns.push_back(make_result("nehari_scaling", aprm + fmt(" I=%.6g", I), level, np, 1e-6 * level, cite_dnorm));

      double S = functionals::action(v, fp, cfg.specfun);
      double Q = functionals::q_form(v, fp, cfg.specfun).q_form;
      double M = grid::mass(v);
      double a1 = (oc.p - 2.0) / (2.0 * oc.p) * np + 0.5 * I;
      double a2 = (oc.p - 2.0) / (2.0 * oc.p) * (Q + omega * M) + I / oc.p;
      double scale = std::max({std::fabs(S), std::fabs(np), std::fabs(Q + omega * M)});
      ai.push_back(make_result("action_identity", aprm, std::max(std::fabs(S - a1), std::fabs(S - a2)), 1e-10 * scale,
                               0.0, cite_s2));
    }
    if (!ns.empty()) out.push_back(worst_of(ns));
    out.push_back(worst_of(ai));
  }
  return out;
}

std::vector<std::string> check_names() {
  return {"green_norm_bound",   "green_l2_bound",       "green_lp_bound",      "modified_gn",
          "hardy",              "theta_monotone",       "theta_sandwich_lower", "theta_sandwich_upper",
          "theta_asymptote",    "equimeasurability",    "hardy_littlewood",    "rearranged_sum",
          "polya_szego",        "energy_levels_lower",  "energy_levels_upper", "omega_threshold",
          "multiplier_identity", "minimizer_shape",     "action_levels",       "action_nonneg",
          "charge_nonzero",     "regular_part_nonzero", "nehari_scaling",      "action_identity"};
}

namespace {

const std::vector<std::string>& ordering_names() {
  static const std::vector<std::string> v{"energy_levels_lower", "energy_levels_upper", "omega_threshold",
                                          "multiplier_identity", "minimizer_shape",     "action_levels",
                                          "action_nonneg",       "charge_nonzero",      "regular_part_nonzero",
                                          "nehari_scaling",      "action_identity"};
  return v;
}

// "theta" selects every theta_* check, "orderings" and "rearrangement" name groups.
std::set<std::string> resolve_selection(const std::vector<std::string>& only) {
  auto all = check_names();
  std::set<std::string> sel;
  if (only.empty()) return {all.begin(), all.end()};
  for (const auto& o : only) {
    bool hit = false;
    if (o == "orderings") {
      sel.insert(ordering_names().begin(), ordering_names().end());
      hit = true;
    } else if (o == "rearrangement") {
      for (auto n : {"equimeasurability", "hardy_littlewood", "rearranged_sum", "polya_szego"}) sel.insert(n);
      hit = true;
    } else if (o == "green") {
      for (auto n : {"green_norm_bound", "green_l2_bound", "green_lp_bound"}) sel.insert(n);
      hit = true;
    } else {
      bool exact = std::find(all.begin(), all.end(), o) != all.end();
      for (const auto& n : all)
        if (n == o || (!exact && o.size() >= 3 && n.rfind(o, 0) == 0)) {
          sel.insert(n);
          hit = true;
        }
    }
    if (!hit) {
      std::string names;
      for (const auto& n : all) names += (names.empty() ? "" : ", ") + n;
      throw std::invalid_argument("verify: unknown check name '" + o + "' (known: " + names + ")");
    }
  }
  return sel;
}

}  // namespace

SuiteReport run_all(const VerifyConfig& cfg) {
  if (cfg.samples < 1) throw std::invalid_argument("verify: samples must be positive");
  auto sel = resolve_selection(cfg.only);
  auto want = [&](const char* n) { return sel.count(n) > 0; };
  SuiteReport rep;
  const specfun::SpecFunConfig& sc = cfg.solve.specfun;
  auto grid = std::make_shared<const grid::RadialGrid>(cfg.grid);

  if (want("green_norm_bound")) {
    Rng rng(cfg.seed);
    std::vector<CheckResult> v;
    for (int k = 0; k < cfg.samples; ++k) {
      double nu = -rng.log_uniform(0.25, 2.0);
      double lam = nu * nu * (1.0 + rng.log_uniform(1e-3, 1e3));
      double s = rng.uniform(1.1, 6.0);
      double sigma = rng.uniform(0.05, 0.95) * 2.0 / s;
      v.push_back(check_green_norm_bound(s, sigma, lam, nu, sc));
    }
    rep.results.push_back(worst_of(v));
  }
  if (want("green_l2_bound") || want("green_lp_bound")) {
    Rng rng(cfg.seed + 1);
    std::vector<CheckResult> a, b;
    for (int k = 0; k < cfg.samples; ++k) {
      double p = rng.uniform(2.05, 3.95);
      double nu = -rng.log_uniform(0.25, 2.0);
      double lam = std::max(1.0, 4.0 * nu * nu) * rng.log_uniform(1.0, 1e3);
      auto [c2, cp] = check_gla2_glap(p, lam, nu, sc);
      a.push_back(c2);
      b.push_back(cp);
    }
    if (want("green_l2_bound")) rep.results.push_back(worst_of(a));
    if (want("green_lp_bound")) rep.results.push_back(worst_of(b));
  }
  if (want("modified_gn")) {
    Rng rng(cfg.seed + 2);
    const double pcal = 3.0;
    std::vector<CheckResult> v;
    std::vector<double> kp_cache;
    for (int k = 0; k < cfg.samples; ++k) {
      double p = rng.uniform(2.1, 3.9);
      double nu = -rng.log_uniform(0.25, 2.0);
      double kp = cfg.gn_constant > 0.0 ? cfg.gn_constant : calibrate_gn_constant(p, grid);
      auto phi = random_profile(grid, rng);
      double q = (rng.uniform(0.0, 1.0) < 0.5 ? -1.0 : 1.0) * rng.log_uniform(0.01, 100.0);
      double lam = std::max(1.0, 4.0 * nu * nu);
      grid::DecomposedState u(phi, q, grid::make_green(grid, lam, nu, sc));
      double need = q * q / std::pow(grid::mass(u), 4.0 / p);
      if (need > lam) u = u.redecompose(grid::make_green(grid, need * rng.uniform(1.0, 2.0), nu, sc));
      v.push_back(check_modified_gn(u, spectral::PhysParams::mass(nu, 0.0, p, 1.0), kp, sc));
    }
    rep.results.push_back(worst_of(v));
    rep.calibration.gn_p = pcal;
    rep.calibration.gn_constant = cfg.gn_constant > 0.0 ? cfg.gn_constant : calibrate_gn_constant(pcal, grid);
    rep.calibration.gn_family = "2 x max ratio over e^{-r^2} and r^a e^{-r}, a = 0, 0.25, .., 4 (per sampled p)";
  }
  if (want("hardy")) {
    Rng rng(cfg.seed + 3);
    double c = cfg.hardy_constant > 0.0 ? cfg.hardy_constant : calibrate_hardy_constant(grid);
    rep.calibration.hardy_constant = c;
    rep.calibration.hardy_family = "2 x max ratio over e^{-b r^2} and r^a e^{-b r}, a in {0, 0.1, 0.5, 1, 2}, b in [0.1, 100]";
    std::vector<CheckResult> v;
    const double fixed[] = {std::exp(-1.0), 0.1, 0.01};
    auto peaked = grid::RadialFunction::sample(grid, [](double r) { return std::pow(r, 0.1) * std::exp(-r); });
    auto gauss = grid::RadialFunction::sample(grid, [](double r) { return std::exp(-r * r); });
    for (double e : fixed) {
      v.push_back(check_hardy(peaked, e, c));
      v.push_back(check_hardy(gauss, e, c));
    }
    for (int k = 0; k < cfg.samples; ++k) v.push_back(check_hardy(random_profile(grid, rng), rng.log_uniform(1e-4, std::exp(-1.0)), c));
    rep.results.push_back(worst_of(v));
  }
  if (want("theta_monotone") || want("theta_sandwich_lower") || want("theta_sandwich_upper") ||
      want("theta_asymptote")) {
    Rng rng(cfg.seed + 4);
    std::vector<CheckResult> all;
    for (double nu : {-0.5, -1.0, -2.0}) {
      std::vector<double> lam(10 * cfg.samples);
      for (auto& l : lam) l = nu * nu * (1.0 + rng.log_uniform(1e-6, 1e8));
      auto v = check_theta_props(nu, lam, sc);
      all.insert(all.end(), v.begin(), v.end());
    }
    for (auto n : {"theta_monotone", "theta_sandwich_lower", "theta_sandwich_upper", "theta_asymptote"}) {
      if (!want(n)) continue;
      std::vector<CheckResult> v;
      for (auto& c : all)
        if (c.name == n) v.push_back(c);
      rep.results.push_back(worst_of(v));
    }
  }
  if (want("equimeasurability") || want("hardy_littlewood") || want("rearranged_sum") || want("polya_szego")) {
    Rng rng(cfg.seed + 5);
    std::vector<CheckResult> all;
    for (int k = 0; k < cfg.samples; ++k) {
      auto f = random_bumps(grid, rng);
      auto g = random_bumps(grid, rng);
      double p = rng.uniform(1.1, 6.0);
      auto v = check_rearrangement(f, g, p);
      all.insert(all.end(), v.begin(), v.end());
    }
    for (auto n : {"equimeasurability", "hardy_littlewood", "rearranged_sum", "polya_szego"}) {
      if (!want(n)) continue;
      std::vector<CheckResult> v;
      for (auto& c : all)
        if (c.name == n) v.push_back(c);
      rep.results.push_back(worst_of(v));
    }
  }
  bool any_order = false;
  for (const auto& n : ordering_names()) any_order = any_order || want(n.c_str());
  if (any_order) {
    solver::SolveConfig sc2 = cfg.solve;
    sc2.seed = cfg.seed;
    auto v = check_orderings(cfg.orderings, cfg.grid, sc2);
    for (auto& c : v)
      if (want(c.name.c_str())) rep.results.push_back(c);
  }

  for (const auto& c : rep.results)
    if (!c.pass) ++rep.failed;
  rep.pass = rep.failed == 0;
  return rep;
}

}  // namespace nlscd::verify
