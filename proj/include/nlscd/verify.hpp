#pragma once

// Numerical checks of the explicit inequalities, constants and orderings the
// model relies on, run over seeded random samples.

#include "nlscd/grid.hpp"
#include "nlscd/solver.hpp"
#include "nlscd/spectral.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace nlscd::verify {

/// One inequality lhs <= rhs at one sample (or the worst of a family).
/// pass <=> margin >= -abs_tol; strict inequalities use abs_tol < 0.
struct CheckResult {
  std::string name;
  std::string params;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  double abs_tol = 0.0;
  bool pass = false;
  std::string citation;
  int samples = 1;
};

CheckResult make_result(std::string name, std::string params, double lhs, double rhs, double abs_tol,
                        std::string citation);

/// C_{lambda,nu}(sigma, s) of the L^s bound on the Green function.
double green_norm_constant(double s, double sigma, double lambda, double nu);
/// C_p and C~_p of the L^2 and L^p bounds, valid for lambda >= max(1, 4 nu^2).
double green_l2_constant(double p);
double green_lp_constant(double p);

/// ||G||_s^s <= C_{lambda,nu} / lambda^{1 - sigma s/2}.
CheckResult check_green_norm_bound(double s, double sigma, double lambda, double nu,
                                   const specfun::SpecFunConfig& cfg = {});

/// ||G||_2^2 <= C_p lambda^{-p/4} and ||G||_p^p <= C~_p lambda^{-p/4}.
std::pair<CheckResult, CheckResult> check_gla2_glap(double p, double lambda, double nu,
                                                    const specfun::SpecFunConfig& cfg = {});

/// GN ratio ||phi||_p^p / (||grad phi||_2^{p-2} ||phi||_2^2).
double gn_ratio(const grid::RadialFunction& phi, double p);

/// 2 x the largest GN ratio over Gaussians and r^a e^{-r}, a in [0, 4].
double calibrate_gn_constant(double p, const grid::GridPtr& grid);

/// Modified GN bound for u = phi + q G with lambda >= max(1, 4 nu^2, q^2/||u||^{8/p}).
CheckResult check_modified_gn(const grid::DecomposedState& u, const spectral::PhysParams& params, double kp,
                              const specfun::SpecFunConfig& cfg = {});

/// int_{B_1} |phi|^2 / (r^2 (1 + |ln r|)^2) / ||phi||_{H^1}^2.
double hardy_ratio(const grid::RadialFunction& phi);

/// 2 x the largest hardy_ratio over Gaussians e^{-b r^2} and r^a e^{-b r}.
double calibrate_hardy_constant(const grid::GridPtr& grid);

/// int |phi|^2/|x| <= c eps (1 + |ln eps|)^2 ||phi||_{H^1}^2 + ||phi||_2^2 / eps, 0 < eps <= 1/e.
CheckResult check_hardy(const grid::RadialFunction& phi, double epsilon, double c);

/// Strict monotonicity on the sorted samples, the two-sided bound at each
/// sample, and the ratio theta / (ln lambda / 4 pi) at lambda = 1e12.
std::vector<CheckResult> check_theta_props(double nu, std::vector<double> lambda_samples,
                                           const specfun::SpecFunConfig& cfg = {});

/// Equimeasurability, Hardy-Littlewood, the |f+g|^p inequality and
/// Polya-Szego on the pair (f, g) of nonnegative grid functions.
std::vector<CheckResult> check_rearrangement(const grid::RadialFunction& f, const grid::RadialFunction& g, double p);

struct OrderingCase {
  double nu = -1.0;
  double alpha = 0.0;
  double p = 3.0;
  /// mu <= 0: action-mode checks only (any p > 2).
  double mu = 1.0;
};

/// Solver-backed orderings: F < E < 0, d < d~ at the ground state's omega
/// and at 2 omega_nu, d >= 0, omega > omega_nu, the multiplier identity,
/// q != 0 and phi != 0 for the action minimiser.
std::vector<CheckResult> check_orderings(const std::vector<OrderingCase>& cases, const grid::GridSpec& grid,
                                         const solver::SolveConfig& cfg);

struct VerifyConfig {
  std::uint64_t seed = 42;
  int samples = 100;
  /// Check names (or group prefixes) to run; empty runs everything.
  std::vector<std::string> only;
  /// 0: calibrate.
  double gn_constant = 0.0;
  double hardy_constant = 0.0;
  grid::GridSpec grid{};
  std::vector<OrderingCase> orderings{{-1.0, 0.0, 3.0, 1.0},
                                     {-0.5, 0.5, 2.5, 2.0},
                                     {-2.0, 1.0, 3.5, 0.5},
                                     {-1.0, 0.0, 4.0, 0.0},
                                     {-1.0, 0.0, 5.0, 0.0}};
  solver::SolveConfig solve{};
};

struct Calibration {
  double gn_constant = 0.0;
  double gn_p = 0.0;
  std::string gn_family;
  double hardy_constant = 0.0;
  std::string hardy_family;
};

struct SuiteReport {
  std::vector<CheckResult> results;
  Calibration calibration;
  int failed = 0;
  bool pass = false;
};

/// Names accepted by VerifyConfig::only.
std::vector<std::string> check_names();

/// Run the suite. Each named check over its sampled family is reported once,
/// at the sample with the smallest relative margin.
SuiteReport run_all(const VerifyConfig& cfg);

}  // namespace nlscd::verify
