#include "nlscd/functionals.hpp"

#include <cmath>
#include <stdexcept>

namespace nlscd::functionals {

NehariProjection nehari_project(const grid::DecomposedState& u, const PhysParams& params,
                                const specfun::SpecFunConfig& cfg) {
  double quad = q_form(u, params, cfg).q_form + params.omega() * grid::mass(u);
  double np = std::pow(grid::lp_norm(u, params.p), params.p);
  if (!(np > 0.0)) throw std::domain_error("nehari_project: u vanishes");
  if (!(quad > 0.0))
    throw std::domain_error("nehari_project: Q + omega ||u||^2 is not positive (omega below omega_nu or degenerate u)");
  double beta = std::pow(quad / np, 1.0 / (params.p - 2.0));
  return {beta, u.scaled(beta)};
}

Gradient gradient(const grid::DecomposedState& u, const PhysParams& params, GradientMode mode,
                  const specfun::SpecFunConfig& cfg) {
  const grid::RadialGrid& g = *u.grid();
  const int n = g.size();
  auto w = g.area_weights();
  auto v = g.line_weights();
  auto G = u.green()->values();
  auto phi = u.phi().values();
  const double lam = u.lambda(), q = u.q(), p = params.p;
  const double th = spectral::theta(lam, params.nu, cfg);
  const double om = mode == GradientMode::action ? params.omega() : 0.0;

  std::vector<double> uu = u.assemble();
  std::vector<double> kphi = g.apply_kinetic(phi);
  std::vector<double> d(n);
  long double dq = 0.0;
  for (int i = 0; i < n; ++i) {
    double nl = std::pow(std::fabs(uu[i]), p - 2.0) * uu[i];
    // 1/2 dQ + omega/2 dM - 1/p dN
    d[i] = kphi[i] + params.nu * v[i] * phi[i] - lam * q * w[i] * G[i] + om * w[i] * uu[i] - w[i] * nl;
    dq += w[i] * G[i] * ((om - lam) * uu[i] - nl);
  }
  dq += (params.alpha + th) * q;
  return {grid::RadialFunction(u.grid(), std::move(d)), static_cast<double>(dq)};
}

double extrapolate_origin(const grid::RadialFunction& phi, int nodes) {
  auto r = phi.mesh().radii();
  double sr = 0, sf = 0, srr = 0, srf = 0;
  for (int i = 0; i < nodes; ++i) {
    sr += r[i];
    sf += phi[i];
    srr += r[i] * r[i];
    srf += r[i] * phi[i];
  }
  double det = nodes * srr - sr * sr;
  return (srr * sf - sr * srf) / det;
}

Residual el_residual(const grid::DecomposedState& u, const PhysParams& params, double omega,
                     const specfun::SpecFunConfig& cfg) {
  PhysParams fp = params;
  fp.mode = spectral::FrequencyMode{omega};
  Gradient gr = gradient(u, fp, GradientMode::action, cfg);
  const grid::RadialGrid& g = *u.grid();
  auto w = g.area_weights();
  const int n = g.size();
  Residual res;
  res.pointwise.assign(n, 0.0);
  long double s = 0;
  for (int i = 1; i < n - 1; ++i) {
    double ri = gr.dphi[i] / w[i];
    res.pointwise[i] = ri;
    s += w[i] * ri * ri;
  }
  double un = std::sqrt(grid::mass(u));
  res.res_pde = un > 0 ? std::sqrt(static_cast<double>(s)) / un : std::sqrt(static_cast<double>(s));
  res.phi0 = extrapolate_origin(u.phi());
  double th = spectral::theta(u.lambda(), params.nu, cfg);
  res.res_bc = std::fabs(res.phi0 - u.q() * (params.alpha + th)) / std::max(1.0, std::fabs(u.q()));
  return res;
}

double mass_multiplier(const grid::DecomposedState& u, const PhysParams& params,
                       const specfun::SpecFunConfig& cfg) {
  double np = std::pow(grid::lp_norm(u, params.p), params.p);
  return (np - q_form(u, params, cfg).q_form) / grid::mass(u);
}

}  // namespace nlscd::functionals
