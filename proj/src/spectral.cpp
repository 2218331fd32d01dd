#include "nlscd/spectral.hpp"

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace nlscd::spectral {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double eps = std::numeric_limits<double>::epsilon();

// Brackets are closed when their width is a few ulps of lambda.
struct RelWidth {
  bool operator()(double a, double b) const { return std::fabs(b - a) <= 4 * eps * std::fabs(a); }
};

RootInfo bracket_solve(double nu, double alpha, double lo, double hi, const specfun::SpecFunConfig& cfg) {
  RootInfo info;
  auto f = [&](double lam) { return alpha + theta(lam, nu, cfg); };
  double flo = f(lo), fhi = f(hi);
  info.lower = lo;
  info.upper = hi;
  if (!(flo < 0.0 && fhi > 0.0)) {
    info.message = "no sign change of alpha + theta in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]";
    return info;
  }
  std::uintmax_t it = 300;
  auto r = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, RelWidth{}, it);
  // take whichever end has the smaller residual
  double fa = f(r.first), fb = f(r.second);
  info.value = std::fabs(fa) <= std::fabs(fb) ? r.first : r.second;
  info.residual = std::fabs(fa) <= std::fabs(fb) ? fa : fb;
  info.lower = r.first;
  info.upper = r.second;
  info.iterations = static_cast<int>(it);
  info.converged = std::fabs(info.residual) < 1e-12 &&
                   std::fabs(r.second - r.first) < 1e-12 * std::max(1.0, info.value);
  if (!info.converged) info.message = "root tolerance not reached";
  return info;
}

}  // namespace

double PhysParams::mu() const {
  if (!is_mass()) throw std::logic_error("parameters are in frequency mode");
  return std::get<MassMode>(mode).mu;
}

double PhysParams::omega() const {
  if (!is_frequency()) throw std::logic_error("parameters are in mass mode");
  return std::get<FrequencyMode>(mode).omega;
}

void PhysParams::validate() const {
  if (!std::isfinite(nu) || !std::isfinite(alpha) || !std::isfinite(p))
    throw std::invalid_argument("nu, alpha and p must be finite");
  if (!(p > 2.0)) throw std::invalid_argument("the nonlinearity needs p > 2");
  if (is_mass() && !(std::isfinite(mu()) && mu() > 0.0))
    throw std::invalid_argument("the mass mu must be positive");
  if (is_frequency() && !std::isfinite(omega())) throw std::invalid_argument("omega must be finite");
}

void PhysParams::validate_for_energy() const {
  validate();
  if (!is_mass()) throw std::invalid_argument("energy minimisation needs a mass (--mu)");
  if (!(nu < 0.0))
    throw std::invalid_argument("ground states at fixed mass are only computed for an attractive Coulomb charge nu < 0");
  if (!(p < 4.0))
    throw std::invalid_argument(
        "mass mode requires 2 < p < 4 (ground-state existence hypothesis: L2-subcritical nonlinearity)");
}

void PhysParams::validate_for_action() const {
  validate();
  if (!is_frequency()) throw std::invalid_argument("action minimisation needs a frequency (--omega)");
  if (!(nu < 0.0))
    throw std::invalid_argument("action minimisers are only computed for an attractive Coulomb charge nu < 0");
  double w = solve_omega_nu(nu, alpha);
  if (!(omega() > w))
    throw std::invalid_argument("action mode requires omega > omega_nu = " + std::to_string(w) +
                                " (action-minimiser existence hypothesis); got omega = " + std::to_string(omega()));
}

double theta(double lambda, double nu, const specfun::SpecFunConfig& cfg) {
  if (!(lambda > 0.0)) throw std::domain_error("theta: need lambda > 0");
  double sl = std::sqrt(lambda);
  double a = 0.5 + nu / (2.0 * sl);
  double psi = specfun::digamma(a, cfg);
  if (std::isinf(psi)) return psi;
  return (psi + 2.0 * specfun::euler_gamma + std::log(2.0 * sl)) / (2.0 * pi);
}

ThetaBounds theta_bounds(double lambda, double nu) {
  if (!(nu < 0.0)) throw std::domain_error("theta_bounds: need nu < 0");
  if (!(lambda > nu * nu)) throw std::domain_error("theta_bounds: need lambda > nu^2");
  double sl = std::sqrt(lambda);
  double s = sl + nu;
  double c = std::log(s) + 2.0 * specfun::euler_gamma;
  return {(c - 2.0 * sl / s) / (2.0 * pi), (c - sl / s) / (2.0 * pi)};
}

RootInfo solve_omega_nu_info(double nu, double alpha, const specfun::SpecFunConfig& cfg) {
  if (!(nu < 0.0)) throw std::domain_error("omega_nu is defined for nu < 0");
  if (!std::isfinite(alpha)) throw std::domain_error("alpha must be finite");
  const double n2 = nu * nu;
  double lo = n2 * (1.0 + 1e-9);
  // theta -> -inf at nu^2; push lo down towards the pole until it is negative
  while (alpha + theta(lo, nu, cfg) >= 0.0 && lo > n2 * (1.0 + 1e-15)) lo = n2 + 0.01 * (lo - n2);
  double hi = std::max(2.0 * n2, 1.0);
  while (alpha + theta(hi, nu, cfg) <= 0.0 && hi < 1e300) {
    lo = hi;
    hi *= 4.0;
  }
  return bracket_solve(nu, alpha, lo, hi, cfg);
}

double solve_omega_nu(double nu, double alpha, const specfun::SpecFunConfig& cfg) {
  RootInfo r = solve_omega_nu_info(nu, alpha, cfg);
  if (!r.converged && r.value == 0.0) throw std::runtime_error("solve_omega_nu: " + r.message);
  return r.value;
}

double solve_omega_nu(const PhysParams& params, const specfun::SpecFunConfig& cfg) {
  return solve_omega_nu(params.nu, params.alpha, cfg);
}

std::vector<double> friedrichs_eigenvalues(double nu, int n_max) {
  std::vector<double> e;
  for (int n = 0; n <= n_max; ++n) e.push_back(-nu * nu / ((1.0 + 2.0 * n) * (1.0 + 2.0 * n)));
  return e;
}

SpectralReport eigenvalue_ladder(const PhysParams& params, int count, const specfun::SpecFunConfig& cfg) {
  if (!(params.nu < 0.0)) throw std::domain_error("eigenvalue_ladder: need nu < 0");
  if (count < 1) throw std::domain_error("eigenvalue_ladder: count must be positive");
  const double nu = params.nu, n2 = nu * nu;
  SpectralReport rep;
  rep.friedrichs = friedrichs_eigenvalues(nu, count - 1);
  rep.roots.resize(count);
  rep.roots[0] = solve_omega_nu_info(nu, params.alpha, cfg);
  for (int k = 1; k < count; ++k) {
    // between the poles lambda = nu^2/(2k+1)^2 and nu^2/(2k-1)^2
    double lo = n2 / ((2.0 * k + 1) * (2.0 * k + 1)) * (1.0 + 1e-9);
    double hi = n2 / ((2.0 * k - 1) * (2.0 * k - 1)) * (1.0 - 1e-9);
    rep.roots[k] = bracket_solve(nu, params.alpha, lo, hi, cfg);
  }
  rep.all_converged = true;
  for (const auto& r : rep.roots) {
    rep.ladder.push_back(-r.value);
    rep.all_converged = rep.all_converged && r.converged;
  }
  rep.omega_nu = rep.roots[0].value;
  return rep;
}

std::vector<double> locate_theta_poles(double nu, int count, const specfun::SpecFunConfig& cfg) {
  if (!(nu < 0.0)) throw std::domain_error("locate_theta_poles: need nu < 0");
  const double n2 = nu * nu;
  // log-spaced scan of lambda = -E from below the count-th pole to above nu^2
  double lmin = n2 / ((2.0 * count + 1) * (2.0 * count + 1));
  double lmax = 2.0 * n2;
  const int samples = 4000 * count;
  std::vector<double> poles;
  double prev_l = lmin, prev_t = theta(prev_l, nu, cfg);
  for (int i = 1; i <= samples; ++i) {
    double l = lmin * std::pow(lmax / lmin, static_cast<double>(i) / samples);
    double t = theta(l, nu, cfg);
    if (prev_t > 0.0 && t < 0.0) {
      // +inf | -inf jump as lambda increases
      double a = prev_l, b = l;
      while (b - a > 2 * eps * b) {
        double m = 0.5 * (a + b);
        if (m <= a || m >= b) break;
        if (theta(m, nu, cfg) > 0.0)
          a = m;
        else
          b = m;
      }
      poles.push_back(-0.5 * (a + b));
    }
    prev_l = l;
    prev_t = t;
  }
  std::sort(poles.begin(), poles.end());
  if (static_cast<int>(poles.size()) > count) poles.resize(count);
  return poles;
}

grid::RadialFunction resolvent_apply(const specfun::GreenParams& gp, const grid::RadialFunction& g,
                                     const specfun::SpecFunConfig& cfg) {
  gp.require_admissible();
  const grid::RadialGrid& mesh = g.mesh();
  const int n = mesh.size();
  const double sl = gp.sqrt_lambda(), a = gp.a(), h = mesh.step();
  auto r = mesh.radii();
  auto rp = mesh.jacobian();

  // Phi = e^{-sl r} ph, F = e^{sl r} fh / Gamma(a)^2, W = 1/Gamma(a)^2
  std::vector<double> ph(n), fh(n);
  for (int i = 0; i < n; ++i) {
    double z = 2.0 * sl * r[i];
    ph[i] = std::sqrt(r[i] / (2.0 * pi)) * specfun::tricomi_gamma_u(a, z, cfg);
    fh[i] = std::sqrt(2.0 * pi * r[i]) * specfun::kummer_m_scaled(a, z, cfg);
  }
  // A_i = int_0^{r_i} e^{-sl (r_i - rho)} fh g, B_i = int_{r_i}^R e^{-sl (rho - r_i)} ph g
  std::vector<double> A(n), B(n);
  A[0] = 0.5 * r[0] * fh[0] * g[0];
  for (int i = 1; i < n; ++i) {
    double d = std::exp(-sl * (r[i] - r[i - 1]));
    A[i] = d * (A[i - 1] + 0.5 * h * fh[i - 1] * g[i - 1] * rp[i - 1]) + 0.5 * h * fh[i] * g[i] * rp[i];
  }
  B[n - 1] = 0.0;
  for (int i = n - 2; i >= 0; --i) {
    double d = std::exp(-sl * (r[i + 1] - r[i]));
    B[i] = d * (B[i + 1] + 0.5 * h * ph[i + 1] * g[i + 1] * rp[i + 1]) + 0.5 * h * ph[i] * g[i] * rp[i];
  }
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = ph[i] * A[i] + fh[i] * B[i];
  return grid::RadialFunction(g.grid(), std::move(out));
}

BoundaryCoefficients fit_boundary_coefficients(std::span<const double> r, std::span<const double> f, int nodes) {
  if (nodes < 2 || static_cast<int>(r.size()) < nodes || f.size() < r.size())
    throw std::invalid_argument("fit_boundary_coefficients: not enough nodes");
  // normal equations for f ~ c1 b1 + c2 b2 with b1 = -sqrt(r) ln r, b2 = sqrt(r)
  double s11 = 0, s12 = 0, s22 = 0, t1 = 0, t2 = 0;
  for (int i = 0; i < nodes; ++i) {
    double b2 = std::sqrt(r[i]);
    double b1 = -b2 * std::log(r[i]);
    s11 += b1 * b1;
    s12 += b1 * b2;
    s22 += b2 * b2;
    t1 += b1 * f[i];
    t2 += b2 * f[i];
  }
  double det = s11 * s22 - s12 * s12;
  return {(t1 * s22 - t2 * s12) / det, (s11 * t2 - s12 * t1) / det};
}

}  // namespace nlscd::spectral
