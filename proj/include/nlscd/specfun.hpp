#pragma once

// Special functions needed by the Coulomb + point-interaction problem:
// Gamma, digamma, Kummer M(a,1,z), Tricomi U(a,1,z), and the Green's
// function of -Delta + nu/|x| + lambda in two dimensions together with the
// two s-wave kernel solutions built from it.

#include <vector>

namespace nlscd::grid {
class RadialGrid;
}

namespace nlscd::specfun {

struct SpecFunConfig {
  /// Target relative accuracy of every value returned by this module.
  double rel_tol = 1e-13;
  /// Cap on the number of adaptive quadrature subdivisions per integral.
  int quad_max_subdiv = 4096;
  /// Tricomi arguments above this use the large-z asymptotic series.
  double asympt_switch_radius = 30.0;
  /// Kummer series are refused above this argument (e^z would overflow).
  double kummer_z_budget = 700.0;

  /// Throws std::invalid_argument when a field violates its range.
  void validate() const;
};

/// Shift lambda > 0 and Coulomb charge nu of the operator -Delta + nu/|x| + lambda.
///
/// The Green's function is only defined when the Tricomi parameter
/// a = 1/2 + nu/(2 sqrt(lambda)) is positive; for nu < 0 this is lambda > nu^2.
class GreenParams {
 public:
  GreenParams(double lambda, double nu);

  double lambda() const { return lambda_; }
  double nu() const { return nu_; }
  double sqrt_lambda() const { return sqrt_lambda_; }
  /// Tricomi first parameter 1/2 + nu/(2 sqrt(lambda)).
  double a() const { return a_; }
  bool admissible() const { return a_ > 0.0; }
  /// Throws std::domain_error unless admissible().
  void require_admissible() const;

 private:
  double lambda_;
  double nu_;
  double sqrt_lambda_;
  double a_;
};

inline constexpr double euler_gamma = 0.57721566490153286060651209008240243;

/// True when x is 0, -1, -2, ... (a pole of Gamma and digamma).
bool is_nonpositive_integer(double x);

/// Gamma function. Lanczos approximation with reflection below 1/2.
/// At a pole the right-hand limit (+-infinity) is returned instead of raising.
double gamma(double x, const SpecFunConfig& cfg = {});

/// Digamma psi = Gamma'/Gamma. At a pole returns -infinity (right-hand limit).
double digamma(double x, const SpecFunConfig& cfg = {});

/// Kummer M(a, 1, z) for z >= 0 by the ascending series.
/// Throws std::overflow_error when z exceeds cfg.kummer_z_budget.
double kummer_m(double a, double z, const SpecFunConfig& cfg = {});

/// Gamma(a) U(a, 1, z) = int_0^inf e^{-zt} t^{a-1} (1+t)^{-a} dt, a > 0, z > 0.
///
/// This is the combination that actually appears in the Green's function; it
/// stays finite and well conditioned as a -> 0+ where Gamma(a) blows up.
double tricomi_gamma_u(double a, double z, const SpecFunConfig& cfg = {});

/// Kummer M(a, 1, z) e^{-z}; same domain and budget as kummer_m.
double kummer_m_scaled(double a, double z, const SpecFunConfig& cfg = {});

/// Tricomi U(a, 1, z) for a > 0, z > 0. Throws std::domain_error otherwise.
double tricomi_u(double a, double z, const SpecFunConfig& cfg = {});

/// Tricomi U(a, 1, z) for any a that is not a nonpositive integer, reached
/// from positive parameters by the (stable) downward recurrence in a.
double tricomi_u_extended(double a, double z, const SpecFunConfig& cfg = {});

/// Green's function G_{lambda,nu}(r) of -Delta + nu/|x| + lambda on R^2.
double green_value(const GreenParams& gp, double r, const SpecFunConfig& cfg = {});

/// G_{lambda,nu} sampled at every node of `grid`.
std::vector<double> green_table(const GreenParams& gp, const grid::RadialGrid& grid,
                                const SpecFunConfig& cfg = {});

/// Square-integrable s-wave solution Phi_{nu,lambda}(r) = sqrt(2 pi r) G(r).
/// Accepts inadmissible lambda (a < 0) as long as a is not a pole, so that
/// bound-state profiles below nu^2 can be evaluated.
double phi_kernel(const GreenParams& gp, double r, const SpecFunConfig& cfg = {});

/// Exponentially growing s-wave solution
/// F_{nu,lambda}(r) = sqrt(2 pi)/Gamma(a)^2 sqrt(r) e^{-sqrt(lambda) r} M(a,1,2 sqrt(lambda) r).
double f_kernel(const GreenParams& gp, double r, const SpecFunConfig& cfg = {});

/// Wronskian Phi F' - Phi' F of the pair above, which is 1/Gamma(a)^2.
double kernel_wronskian(const GreenParams& gp, const SpecFunConfig& cfg = {});

struct GreenNorm {
  double value = 0.0;           ///< ||G||_s^s = 2 pi int G^s r dr
  double error_estimate = 0.0;  ///< |fine - coarse| quadrature difference
  double tail_fraction = 0.0;   ///< share of the value carried by the outermost node
  bool tail_warning = false;    ///< tail_fraction > rel_tol: R_max too small
};

/// L^s norm (to the power s) of G_{lambda,nu} on `grid`, s > 1.
GreenNorm green_norm(const GreenParams& gp, double s, const grid::RadialGrid& grid,
                     const SpecFunConfig& cfg = {});

}  // namespace nlscd::specfun
