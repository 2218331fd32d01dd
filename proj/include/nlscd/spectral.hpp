#pragma once

// The spectral function theta_{lambda,nu}, the point-interaction eigenvalue
// condition alpha + theta_{-E,nu} = 0, the Friedrichs (alpha = infinity)
// ladder, and the half-line s-wave resolvent.

#include "nlscd/grid.hpp"
#include "nlscd/specfun.hpp"

#include <string>
#include <variant>
#include <vector>

namespace nlscd::spectral {

struct MassMode {
  double mu;
};
struct FrequencyMode {
  double omega;
};

/// Physical constants of the problem. Exactly one of mass / frequency.
struct PhysParams {
  double nu = -1.0;
  double alpha = 0.0;
  double p = 3.0;
  std::variant<MassMode, FrequencyMode> mode = MassMode{1.0};

  static PhysParams mass(double nu, double alpha, double p, double mu) {
    return {nu, alpha, p, MassMode{mu}};
  }
  static PhysParams frequency(double nu, double alpha, double p, double omega) {
    return {nu, alpha, p, FrequencyMode{omega}};
  }

  bool is_mass() const { return std::holds_alternative<MassMode>(mode); }
  bool is_frequency() const { return std::holds_alternative<FrequencyMode>(mode); }
  /// Throws std::logic_error when the mode does not match.
  double mu() const;
  double omega() const;

  /// Finite constants and p > 2. Throws std::invalid_argument.
  void validate() const;
  /// Mass-constrained minimisation: nu < 0, 2 < p < 4, mu > 0.
  void validate_for_energy() const;
  /// Nehari minimisation: nu < 0, p > 2, omega > omega_nu.
  void validate_for_action() const;
};

/// theta_{lambda,nu} = (psi(a) + 2 gamma_E + ln(2 sqrt(lambda))) / (2 pi).
/// Defined for every lambda > 0 with a not a pole; at a pole the digamma
/// sentinel propagates (-infinity).
double theta(double lambda, double nu, const specfun::SpecFunConfig& cfg = {});

struct ThetaBounds {
  double lower;
  double upper;
};

/// Explicit bracket for theta when nu < 0 and lambda > nu^2.
ThetaBounds theta_bounds(double lambda, double nu);

struct RootInfo {
  double value = 0.0;   ///< root in lambda (or E for ladder entries)
  double lower = 0.0;   ///< final bracket in lambda
  double upper = 0.0;
  int iterations = 0;
  double residual = 0.0;  ///< alpha + theta at the root
  bool converged = false;
  std::string message;
};

/// Unique lambda > nu^2 with alpha + theta_{lambda,nu} = 0 (nu < 0).
RootInfo solve_omega_nu_info(double nu, double alpha, const specfun::SpecFunConfig& cfg = {});
double solve_omega_nu(double nu, double alpha, const specfun::SpecFunConfig& cfg = {});
double solve_omega_nu(const PhysParams& params, const specfun::SpecFunConfig& cfg = {});

/// E_n = -nu^2/(1+2n)^2, n = 0..n_max.
std::vector<double> friedrichs_eigenvalues(double nu, int n_max);

struct SpectralReport {
  double omega_nu = 0.0;
  std::vector<double> ladder;      ///< E_0 = -omega_nu < E_1 < ... < 0
  std::vector<double> friedrichs;  ///< E_n^F for the same number of entries
  std::vector<RootInfo> roots;     ///< per ladder entry, lambda = -E
  bool all_converged = false;
};

/// The `count` lowest eigenvalues of the point-interaction operator: one
/// below -nu^2 and one in each interval between consecutive Friedrichs
/// eigenvalues. Roots in different intervals are independent.
SpectralReport eigenvalue_ladder(const PhysParams& params, int count,
                                 const specfun::SpecFunConfig& cfg = {});

/// Poles of theta_{-E,nu} located numerically by scanning E and bisecting
/// every +inf/-inf jump; returns the `count` poles closest to -nu^2 first.
std::vector<double> locate_theta_poles(double nu, int count, const specfun::SpecFunConfig& cfg = {});

/// (R g)(r) = (1/W)[Phi(r) int_0^r F g + F(r) int_r^inf Phi g], with the
/// exponentials of Phi and F cancelled analytically so that nothing overflows.
/// g lives on the half line (measure d rho).
grid::RadialFunction resolvent_apply(const specfun::GreenParams& gp, const grid::RadialFunction& g,
                                     const specfun::SpecFunConfig& cfg = {});

struct BoundaryCoefficients {
  double g0;  ///< coefficient of -sqrt(r) ln r
  double g1;  ///< coefficient of sqrt(r)
};

/// Least-squares fit of f(r) ~ -g0 sqrt(r) ln r + g1 sqrt(r) on the
/// `nodes` smallest radii.
BoundaryCoefficients fit_boundary_coefficients(std::span<const double> r, std::span<const double> f,
                                               int nodes = 20);

}  // namespace nlscd::spectral
