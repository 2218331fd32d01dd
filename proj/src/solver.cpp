#include "nlscd/solver.hpp"

#include "discrete_problem.hpp"

#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <future>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>

namespace nlscd::solver {

using detail::DiscreteProblem;
using detail::SpMat;
using detail::Vec;

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

struct Run {
  Vec x;
  double value = 0.0;
  double grad_norm = 0.0;
  double omega_stationary = 0.0;
  int iterations = 0;
  bool converged = false;
  bool monotone = true;
  std::string message;
};

double lambda_target(const DiscreteProblem& pb, double q, double mass) {
  double nu = pb.params().nu;
  return std::max({1.0, 4.0 * nu * nu, q * q / std::pow(mass, 4.0 / pb.params().p)});
}

void set_mass(const DiscreteProblem& pb, Vec& x, double mu) {
  x *= std::sqrt(mu / static_cast<double>(pb.scalars(x).M));
}

// ---- fixed mass: projected gradient on the sphere ||u||^2 = mu ----

struct MassStep {
  double gn;
  double c;
  Vec d;
  Vec ge;
};

MassStep mass_direction(const DiscreteProblem& pb, const Vec& x) {
  auto gr = pb.gradients(x);
  Vec ge = gr.q_half - gr.n_p;
  Vec gm = 2.0 * gr.m_half;
  Vec a = pb.precondition(ge);
  Vec b = pb.precondition(gm);
  double c = gm.dot(a) / gm.dot(b);
  Vec pa = a - c * b;
  MassStep s;
  s.gn = std::sqrt(std::max(0.0, (ge - c * gm).dot(pa)));
  s.c = c;
  s.d = -pa;
  s.ge = std::move(ge);
  return s;
}

void newton_mass(DiscreteProblem& pb, Vec& x, double& omega, double mu, int steps) {
  const int n = pb.dim();
  for (int k = 0; k < steps; ++k) {
    auto gr = pb.gradients(x);
    Vec F(n + 1);
    F.head(n) = gr.q_half - gr.n_p + omega * gr.m_half;
    F[n] = 0.5 * (static_cast<double>(pb.scalars(x).M) - mu);
    if (pb.restricted()) F[n - 1] = 0.0;
    double f0 = F.norm();

    SpMat H = pb.lagrangian_hessian(x, omega);
    std::vector<Eigen::Triplet<double>> t;
    t.reserve(H.nonZeros() + 2 * n);
    for (int c = 0; c < H.outerSize(); ++c)
      for (SpMat::InnerIterator it(H, c); it; ++it) t.emplace_back(it.row(), it.col(), it.value());
    for (int i = 0; i < n; ++i) {
      if (gr.m_half[i] == 0.0) continue;
      t.emplace_back(i, n, gr.m_half[i]);
      t.emplace_back(n, i, gr.m_half[i]);
    }
    SpMat J(n + 1, n + 1);
    J.setFromTriplets(t.begin(), t.end());
    Eigen::SparseLU<SpMat> lu;
    lu.compute(J);
    if (lu.info() != Eigen::Success) return;
    Vec dx = lu.solve(-F);
    if (lu.info() != Eigen::Success || !dx.allFinite()) return;

    Vec xn = x + dx.head(n);
    double on = omega + dx[n];
    pb.mask(xn);
    auto g2 = pb.gradients(xn);
    Vec F2(n + 1);
    F2.head(n) = g2.q_half - g2.n_p + on * g2.m_half;
    F2[n] = 0.5 * (static_cast<double>(pb.scalars(xn).M) - mu);
    if (pb.restricted()) F2[n - 1] = 0.0;
    if (!(F2.norm() < f0)) return;
    x = xn;
    omega = on;
    if (F2.norm() < 1e-14 * std::max(1.0, std::fabs(omega))) return;
  }
}

Run descend_mass(DiscreteProblem& pb, Vec x, double mu, double sigma, const SolveConfig& cfg) {
  Run run;
  set_mass(pb, x, mu);
  pb.factor_preconditioner(sigma);
  long double E = pb.energy(x);
  double t = cfg.step_init;
  MassStep s = mass_direction(pb, x);
  int it = 0;
  for (; it < cfg.max_outer_iters; ++it) {
    if (s.gn < cfg.grad_tol) break;
    double slope = s.ge.dot(s.d);
    bool accepted = false;
    Vec xn;
    long double En = 0;
    while (t > 1e-20) {
      xn = x + t * s.d;
      set_mass(pb, xn, mu);
      En = pb.energy(xn);
      if (En <= E + cfg.armijo_c * t * slope) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) {
      run.message = "line search stalled at round-off";
      break;
    }
    if (En > E) run.monotone = false;
    x = std::move(xn);
    E = En;
    t = std::min(2.0 * t, cfg.step_init);

    if (!pb.restricted()) {
      double q = x[pb.n()];
      if (std::fabs(q) < 1e-10 * std::sqrt(mu)) {
        run.message = "charge q collapsed to zero";
        break;
      }
      double lt = lambda_target(pb, q, mu);
      if (std::fabs(lt - pb.lambda()) > 0.05 * pb.lambda()) {
        pb.set_lambda(lt, &x);
        pb.factor_preconditioner(sigma);
        E = pb.energy(x);
      }
    }
    s = mass_direction(pb, x);
  }
  run.iterations = it;
  run.omega_stationary = -2.0 * s.c;
  if (cfg.newton_steps > 0 && run.message.empty()) {
    double om = run.omega_stationary;
    newton_mass(pb, x, om, mu, cfg.newton_steps);
    set_mass(pb, x, mu);
    run.omega_stationary = om;
    s = mass_direction(pb, x);
    long double En = pb.energy(x);
    if (En > E + 1e-12L * std::fabs(E)) run.monotone = false;
    E = std::min(E, En);
  }
  run.grad_norm = s.gn;
  run.converged = s.gn < cfg.grad_tol;
  if (!run.converged && run.message.empty()) run.message = "gradient tolerance not reached";
  run.value = static_cast<double>(pb.energy(x));
  run.x = std::move(x);
  return run;
}

// ---- fixed frequency: descent of J(v) = S(beta(v) v) with Nehari projection ----

double nehari_beta(const DiscreteProblem& pb, const Vec& x, double omega) {
  auto s = pb.scalars(x);
  long double A = s.Q + omega * s.M;
  if (!(A > 0) || !(s.Np > 0)) return std::numeric_limits<double>::quiet_NaN();
  return static_cast<double>(std::pow(A / s.Np, 1.0L / (pb.params().p - 2.0L)));
}

long double j_value(const DiscreteProblem& pb, const Vec& x, double omega) {
  auto s = pb.scalars(x);
  const long double p = pb.params().p;
  long double A = s.Q + omega * s.M;
  if (!(A > 0) || !(s.Np > 0)) return std::numeric_limits<long double>::infinity();
  return (p - 2) / (2 * p) * std::pow(A, p / (p - 2)) / std::pow(s.Np, 2 / (p - 2));
}

Vec j_gradient(const DiscreteProblem& pb, const Vec& x, double omega) {
  auto gr = pb.gradients(x);
  double beta = nehari_beta(pb, x, omega);
  double p = pb.params().p;
  return beta * beta * (gr.q_half + omega * gr.m_half) - std::pow(beta, p) * gr.n_p;
}

void newton_action(DiscreteProblem& pb, Vec& x, double omega, int steps) {
  for (int k = 0; k < steps; ++k) {
    auto gr = pb.gradients(x);
    Vec F = gr.q_half - gr.n_p + omega * gr.m_half;
    double f0 = F.norm();
    SpMat H = pb.lagrangian_hessian(x, omega);
    Eigen::SparseLU<SpMat> lu;
    lu.compute(H);
    if (lu.info() != Eigen::Success) return;
    Vec dx = lu.solve(-F);
    if (lu.info() != Eigen::Success || !dx.allFinite()) return;
    Vec xn = x + dx;
    pb.mask(xn);
    auto g2 = pb.gradients(xn);
    double f1 = (g2.q_half - g2.n_p + omega * g2.m_half).norm();
    if (!(f1 < f0)) return;
    x = xn;
    if (f1 < 1e-14 * std::max(1.0, omega)) return;
  }
}

Run descend_action(DiscreteProblem& pb, Vec x, double omega, const SolveConfig& cfg) {
  Run run;
  pb.factor_preconditioner(omega);
  double b = nehari_beta(pb, x, omega);
  if (!std::isfinite(b)) throw std::runtime_error("initial state has a nonpositive quadratic part");
  x *= b;
  long double J = j_value(pb, x, omega);
  double t = cfg.step_init;
  Vec g = j_gradient(pb, x, omega);
  Vec pg = pb.precondition(g);
  double gn = std::sqrt(std::max(0.0, g.dot(pg)));
  int it = 0;
  for (; it < cfg.max_outer_iters; ++it) {
    if (gn < cfg.grad_tol) break;
    Vec d = -pg;
    double slope = g.dot(d);
    bool accepted = false;
    Vec xn;
    long double Jn = 0;
    while (t > 1e-20) {
      xn = x + t * d;
      Jn = j_value(pb, xn, omega);
      if (Jn <= J + cfg.armijo_c * t * slope) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) {
      run.message = "line search stalled at round-off";
      break;
    }
    if (Jn > J) run.monotone = false;
    double bn = nehari_beta(pb, xn, omega);
    x = xn * bn;
    J = Jn;
    t = std::min(2.0 * t, cfg.step_init);
    if (!pb.restricted()) {
      double q = x[pb.n()];
      if (std::fabs(q) < 1e-12) {
        run.message = "charge q collapsed to zero";
        break;
      }
      double lt = lambda_target(pb, q, static_cast<double>(pb.scalars(x).M));
      if (std::fabs(lt - pb.lambda()) > 0.05 * pb.lambda()) {
        pb.set_lambda(lt, &x);
        pb.factor_preconditioner(omega);
        J = j_value(pb, x, omega);
      }
    }
    g = j_gradient(pb, x, omega);
    pg = pb.precondition(g);
    gn = std::sqrt(std::max(0.0, g.dot(pg)));
  }
  run.iterations = it;
  if (cfg.newton_steps > 0 && run.message.empty()) {
    newton_action(pb, x, omega, cfg.newton_steps);
    long double Jn = j_value(pb, x, omega);
    if (Jn > J + 1e-12L * std::fabs(J)) run.monotone = false;
    g = j_gradient(pb, x, omega);
    pg = pb.precondition(g);
    gn = std::sqrt(std::max(0.0, g.dot(pg)));
  }
  run.grad_norm = gn;
  run.omega_stationary = omega;
  run.converged = gn < cfg.grad_tol;
  if (!run.converged && run.message.empty()) run.message = "gradient tolerance not reached";
  run.value = static_cast<double>(pb.action(x, omega));
  run.x = std::move(x);
  return run;
}

// ---- initial data ----

Vec initial_state(const DiscreteProblem& pb, double mass, bool with_q, std::uint64_t seed) {
  const int n = pb.n();
  const auto& g = *pb.grid();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd(0.0, 1.0);
  double a1 = nd(rng), a2 = nd(rng);
  Vec x = Vec::Zero(n + 1);
  for (int i = 0; i < n; ++i) {
    double r = g.r(i);
    x[i] = std::exp(-0.5 * r * r) * (1.0 + 0.1 * a1 * std::exp(-r));
  }
  double m = static_cast<double>(pb.scalars(x).M);
  double share = with_q ? 0.5 : 1.0;
  x.head(n) *= std::sqrt(share * mass / m);
  if (with_q) x[n] = std::sqrt(0.5 * mass / pb.green()->mass()) * (1.0 + 0.1 * a2);
  return x;
}

// ---- report assembly ----

void fill_profile_diagnostics(GroundStateReport& rep, const PhysParams& params, double omega,
                              const specfun::SpecFunConfig& sc) {
  const grid::DecomposedState& s = *rep.state;
  auto fv = functionals::q_form(s, params, sc);
  rep.q_form = fv.q_form;
  rep.mass = grid::mass(s);
  rep.lp_norm_p = std::pow(grid::lp_norm(s, params.p), params.p);
  rep.energy = 0.5 * fv.q_form - rep.lp_norm_p / params.p;
  rep.q = s.q();
  rep.lambda = s.lambda();
  rep.action = rep.energy + 0.5 * omega * rep.mass;
  rep.nehari = fv.q_form + omega * rep.mass - rep.lp_norm_p;
  rep.d_estimate = (params.p - 2.0) / (2.0 * params.p) * rep.lp_norm_p;

  auto res = functionals::el_residual(s, params, omega, sc);
  rep.res_pde = res.res_pde;
  rep.res_bc = res.res_bc;

  auto u = s.assemble();
  double umax = 0;
  for (double x : u) umax = std::max(umax, std::fabs(x));
  const double floor = 1e-12 * umax;
  rep.positive = u[0] > 0;
  rep.monotone = true;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!(u[i] > 0 || std::fabs(u[i]) <= floor)) rep.positive = false;
    if (i + 1 < u.size() && !(u[i + 1] <= u[i] * (1.0 + 1e-8) + floor)) rep.monotone = false;
  }
  // slope of u against -ln r on the 20 smallest nodes
  auto r = s.grid()->radii();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int k = 20;
  for (int i = 0; i < k; ++i) {
    double xx = -std::log(r[i]);
    sx += xx;
    sy += u[i];
    sxx += xx * xx;
    sxy += xx * u[i];
  }
  rep.log_slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  rep.log_slope_expected = rep.q / two_pi;
}

template <class Solve>
std::vector<Run> run_restarts(const SolveConfig& cfg, Solve solve) {
  const int total = cfg.restarts;
  const int threads = std::max(1, std::min(worker_threads(cfg), total));
  std::vector<Run> runs(total);
  for (int start = 0; start < total; start += threads) {
    int stop = std::min(total, start + threads);
    if (threads == 1) {
      for (int k = start; k < stop; ++k) runs[k] = solve(cfg.seed + k);
      continue;
    }
    std::vector<std::future<Run>> fut;
    for (int k = start; k < stop; ++k) fut.push_back(std::async(std::launch::async, solve, cfg.seed + k));
    for (int k = start; k < stop; ++k) runs[k] = fut[k - start].get();
  }
  return runs;
}

int pick_best(const std::vector<Run>& runs) {
  int best = -1;
  for (int pass = 0; pass < 2 && best < 0; ++pass)
    for (int k = 0; k < static_cast<int>(runs.size()); ++k) {
      if (pass == 0 && !runs[k].converged) continue;
      if (!runs[k].x.size()) continue;
      if (best < 0 || runs[k].value < runs[best].value) best = k;
    }
  return best;
}

void summarise_restarts(GroundStateReport& rep, const std::vector<Run>& runs, const SolveConfig& cfg) {
  double lo = INFINITY, hi = -INFINITY;
  for (int k = 0; k < static_cast<int>(runs.size()); ++k) {
    const Run& r = runs[k];
    rep.restarts.push_back({cfg.seed + k, r.value, r.iterations, r.converged, r.message});
    if (r.converged) {
      lo = std::min(lo, r.value);
      hi = std::max(hi, r.value);
    }
  }
  rep.restart_spread = std::isfinite(lo) ? (hi - lo) / std::max(std::fabs(lo), 1e-300) : 0.0;
}

grid::GridPtr make_grid(const grid::GridSpec& spec) { return std::make_shared<const grid::RadialGrid>(spec); }

}  // namespace

void SolveConfig::validate() const {
  if (max_outer_iters < 1) throw std::invalid_argument("max_outer_iters must be positive");
  if (!(step_init > 0.0)) throw std::invalid_argument("step_init must be positive");
  if (!(armijo_c > 0.0 && armijo_c < 0.5)) throw std::invalid_argument("armijo_c must lie in (0, 1/2)");
  if (!(grad_tol > 0.0 && grad_tol <= 1e-3)) throw std::invalid_argument("grad_tol must lie in (0, 1e-3]");
  if (!(residual_tol > 0.0 && residual_tol <= 1e-3))
    throw std::invalid_argument("residual_tol must lie in (0, 1e-3]");
  if (restarts < 3) throw std::invalid_argument("at least 3 restarts are required");
  if (newton_steps < 0) throw std::invalid_argument("newton_steps must be nonnegative");
  specfun.validate();
}

int worker_threads(const SolveConfig& cfg) {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  int n = cfg.threads > 0 ? cfg.threads : std::max(1, hw);
  if (const char* env = std::getenv("NLSCD_THREADS")) {
    int cap = std::atoi(env);
    if (cap > 0) n = std::min(n, cap);
  }
  return std::max(1, n);
}

RestrictedResult restricted_energy_minimum(const PhysParams& params, const grid::GridSpec& gspec,
                                           const SolveConfig& cfg) {
  params.validate_for_energy();
  DiscreteProblem pb(make_grid(gspec), params, true, cfg.specfun);
  Vec x = initial_state(pb, params.mu(), false, cfg.seed);
  Run run = descend_mass(pb, x, params.mu(), params.nu * params.nu + 1.0, cfg);
  RestrictedResult r;
  r.value = run.value;
  r.grad_norm = run.grad_norm;
  r.iterations = run.iterations;
  r.converged = run.converged;
  r.state = pb.state(run.x);
  return r;
}

RestrictedResult restricted_action_minimum(const PhysParams& params, const grid::GridSpec& gspec,
                                           const SolveConfig& cfg) {
  params.validate_for_action();
  DiscreteProblem pb(make_grid(gspec), params, true, cfg.specfun);
  Vec x = initial_state(pb, 1.0, false, cfg.seed);
  Run run = descend_action(pb, x, params.omega(), cfg);
  RestrictedResult r;
  r.value = run.value;
  r.grad_norm = run.grad_norm;
  r.iterations = run.iterations;
  r.converged = run.converged;
  r.state = pb.state(run.x);
  return r;
}

GroundStateReport minimize_energy(const PhysParams& params, const grid::GridSpec& gspec, const SolveConfig& cfg) {
  params.validate_for_energy();
  cfg.validate();
  auto grid = make_grid(gspec);
  const double mu = params.mu();
  const double omega_nu = spectral::solve_omega_nu(params, cfg.specfun);

  auto solve = [&](std::uint64_t seed) {
    DiscreteProblem pb(grid, params, false, cfg.specfun);
    Vec x = initial_state(pb, mu, true, seed);
    Run r = descend_mass(pb, x, mu, omega_nu + 1.0, cfg);
    r.x.conservativeResize(r.x.size() + 1);
    r.x[r.x.size() - 1] = pb.lambda();  // carry lambda along
    return r;
  };
  std::vector<Run> runs = run_restarts(cfg, solve);
  int best = pick_best(runs);

  GroundStateReport rep;
  rep.mode = SolveMode::energy;
  rep.omega_nu = omega_nu;
  summarise_restarts(rep, runs, cfg);
  if (best < 0) {
    rep.message = "no restart produced a state";
    return rep;
  }
  const Run& run = runs[best];
  DiscreteProblem pb(grid, params, false, cfg.specfun);
  double lam = run.x[run.x.size() - 1];
  if (lam != pb.lambda()) pb.set_lambda(lam, nullptr);
  Vec x = run.x.head(run.x.size() - 1);
  rep.state = pb.state(x);
  rep.grad_norm = run.grad_norm;
  rep.iterations = run.iterations;
  rep.descent_monotone = run.monotone;
  rep.multiplier_stationary = run.omega_stationary;
  rep.multiplier = functionals::mass_multiplier(*rep.state, params, cfg.specfun);
  fill_profile_diagnostics(rep, params, rep.multiplier, cfg.specfun);
  rep.converged = run.converged && rep.res_pde < cfg.residual_tol;
  rep.message = run.converged ? (rep.res_pde < cfg.residual_tol ? "" : "residual tolerance not reached") : run.message;

  rep.restricted_energy = restricted_energy_minimum(params, gspec, cfg);
  if (rep.multiplier > params.nu * params.nu) {
    PhysParams fp = PhysParams::frequency(params.nu, params.alpha, params.p, rep.multiplier);
    if (rep.multiplier > omega_nu) rep.restricted_action = restricted_action_minimum(fp, gspec, cfg);
  }
  return rep;
}

GroundStateReport minimize_action(const PhysParams& params, const grid::GridSpec& gspec, const SolveConfig& cfg) {
  params.validate_for_action();
  cfg.validate();
  auto grid = make_grid(gspec);
  const double omega = params.omega();
  const double omega_nu = spectral::solve_omega_nu(params, cfg.specfun);

  auto solve = [&](std::uint64_t seed) {
    DiscreteProblem pb(grid, params, false, cfg.specfun);
    Vec x = initial_state(pb, 1.0, true, seed);
    Run r = descend_action(pb, x, omega, cfg);
    r.x.conservativeResize(r.x.size() + 1);
    r.x[r.x.size() - 1] = pb.lambda();
    return r;
  };
  std::vector<Run> runs = run_restarts(cfg, solve);
  int best = pick_best(runs);

  GroundStateReport rep;
  rep.mode = SolveMode::action;
  rep.omega_nu = omega_nu;
  summarise_restarts(rep, runs, cfg);
  if (best < 0) {
    rep.message = "no restart produced a state";
    return rep;
  }
  const Run& run = runs[best];
  DiscreteProblem pb(grid, params, false, cfg.specfun);
  double lam = run.x[run.x.size() - 1];
  if (lam != pb.lambda()) pb.set_lambda(lam, nullptr);
  Vec x = run.x.head(run.x.size() - 1);
  rep.state = pb.state(x);
  rep.grad_norm = run.grad_norm;
  rep.iterations = run.iterations;
  rep.descent_monotone = run.monotone;
  rep.multiplier = omega;
  rep.multiplier_stationary = omega;
  fill_profile_diagnostics(rep, params, omega, cfg.specfun);
  rep.converged = run.converged && rep.res_pde < cfg.residual_tol;
  rep.message = run.converged ? (rep.res_pde < cfg.residual_tol ? "" : "residual tolerance not reached") : run.message;
  rep.restricted_action = restricted_action_minimum(params, gspec, cfg);
  return rep;
}

CrossValidationReport cross_validate(const GroundStateReport& gs, const PhysParams& params,
                                     const grid::GridSpec& gspec, const SolveConfig& cfg) {
  if (gs.mode != SolveMode::energy || !gs.state)
    throw std::invalid_argument("cross_validate needs a mass-mode ground state");
  CrossValidationReport cv;
  cv.omega = gs.multiplier;
  cv.omega_nu = gs.omega_nu;
  cv.omega_pass = cv.omega > cv.omega_nu;
  const double mu = params.mu();

  cv.multiplier_formula = gs.multiplier;
  cv.multiplier_rel_err = std::fabs(gs.multiplier_stationary - gs.multiplier) / std::fabs(gs.multiplier);
  cv.energy_identity_rel_err =
      std::fabs(2.0 * gs.energy - (params.p - 2.0) / params.p * gs.lp_norm_p + gs.multiplier_stationary * mu) /
      std::fabs(gs.multiplier_stationary * mu);
  cv.multiplier_pass = cv.multiplier_rel_err < 1e-6 && cv.energy_identity_rel_err < 1e-6;

  cv.action_of_ground_state = gs.energy + 0.5 * cv.omega * gs.mass;
  if (cv.omega_pass) {
    PhysParams fp = PhysParams::frequency(params.nu, params.alpha, params.p, cv.omega);
    cv.action_run = minimize_action(fp, gspec, cfg);
    cv.action_minimum = cv.action_run.action;
    cv.action_rel_gap =
        std::fabs(cv.action_of_ground_state - cv.action_minimum) / std::fabs(cv.action_minimum);
    cv.action_pass = cv.action_rel_gap < 1e-3;
  }
  cv.pass = cv.action_pass && cv.multiplier_pass && cv.omega_pass;
  return cv;
}

}  // namespace nlscd::solver
