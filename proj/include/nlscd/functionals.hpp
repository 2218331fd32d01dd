#pragma once

// Quadratic form, energy, action and Nehari functionals on decomposed states
// u = phi + q G_{lambda,nu}, their first variations, and Euler-Lagrange
// residuals.

#include "nlscd/grid.hpp"
#include "nlscd/spectral.hpp"

#include <complex>
#include <vector>

namespace nlscd::functionals {

using spectral::PhysParams;

struct FormValue {
  double q_form = 0.0;
  double kinetic = 0.0;     ///< ||grad phi||^2
  double coulomb = 0.0;     ///< nu || |x|^{-1/2} phi ||^2
  double shift_term = 0.0;  ///< lambda (||phi||^2 - ||u||^2)
  double point_term = 0.0;  ///< (alpha + theta) |q|^2
};

template <class T>
FormValue q_form(const grid::BasicDecomposedState<T>& u, const PhysParams& params,
                 const specfun::SpecFunConfig& cfg = {}) {
  const auto& phi = u.phi();
  FormValue f;
  f.kinetic = grid::grad_norm_sq(phi);
  f.coulomb = params.nu * grid::coulomb_term(phi);
  f.shift_term = u.lambda() * (grid::mass(phi) - grid::mass(u));
  double aq = std::abs(u.q());
  f.point_term = aq == 0.0 ? 0.0 : (params.alpha + spectral::theta(u.lambda(), params.nu, cfg)) * aq * aq;
  f.q_form = f.kinetic + f.coulomb + f.shift_term + f.point_term;
  return f;
}

/// F = Q/2 - ||u||_p^p / p.
template <class T>
double energy(const grid::BasicDecomposedState<T>& u, const PhysParams& params,
              const specfun::SpecFunConfig& cfg = {}) {
  double np = std::pow(grid::lp_norm(u, params.p), params.p);
  return 0.5 * q_form(u, params, cfg).q_form - np / params.p;
}

/// S = F + omega ||u||^2 / 2, omega taken from frequency-mode params.
template <class T>
double action(const grid::BasicDecomposedState<T>& u, const PhysParams& params,
              const specfun::SpecFunConfig& cfg = {}) {
  return energy(u, params, cfg) + 0.5 * params.omega() * grid::mass(u);
}

/// I = Q + omega ||u||^2 - ||u||_p^p.
template <class T>
double nehari(const grid::BasicDecomposedState<T>& u, const PhysParams& params,
              const specfun::SpecFunConfig& cfg = {}) {
  double np = std::pow(grid::lp_norm(u, params.p), params.p);
  return q_form(u, params, cfg).q_form + params.omega() * grid::mass(u) - np;
}

struct NehariProjection {
  double beta;
  grid::DecomposedState state;
};

/// beta = ((Q + omega ||u||^2)/||u||_p^p)^{1/(p-2)} and v = beta u, so I(v) = 0.
/// Throws std::domain_error when Q + omega ||u||^2 <= 0 or u = 0.
NehariProjection nehari_project(const grid::DecomposedState& u, const PhysParams& params,
                                const specfun::SpecFunConfig& cfg = {});

enum class GradientMode { energy, action };

struct Gradient {
  grid::RadialFunction dphi;  ///< d/d phi_i of the scalar functional
  double dq = 0.0;            ///< d/dq
};

/// Exact first variation of the discrete F (energy mode) or S (action
/// mode, omega from params) with respect to every node value of phi and q.
Gradient gradient(const grid::DecomposedState& u, const PhysParams& params, GradientMode mode,
                  const specfun::SpecFunConfig& cfg = {});

struct Residual {
  double res_pde = 0.0;
  double res_bc = 0.0;
  double phi0 = 0.0;  ///< extrapolated phi(0)
  std::vector<double> pointwise;
};

/// Strong-form residual of
///   -Delta phi + nu phi/r + omega phi + (omega - lambda) q G - |u|^{p-2} u = 0
/// over interior nodes (L2 norm divided by ||u||_2), and of the boundary
/// condition phi(0) = q (alpha + theta) divided by max(1, |q|).
Residual el_residual(const grid::DecomposedState& u, const PhysParams& params, double omega,
                     const specfun::SpecFunConfig& cfg = {});

/// Lagrange multiplier of the mass constraint, (||u||_p^p - Q(u)) / ||u||^2.
double mass_multiplier(const grid::DecomposedState& u, const PhysParams& params,
                       const specfun::SpecFunConfig& cfg = {});

/// phi(0) from a straight-line fit through the `nodes` smallest radii.
double extrapolate_origin(const grid::RadialFunction& phi, int nodes = 10);

}  // namespace nlscd::functionals
