#pragma once

// Ground states at fixed mass and action minimisers at fixed frequency.
//
// Both problems are solved over the unknowns (phi_0 .. phi_{N-2}, q) with
// phi pinned to zero at R_max. A preconditioned projected-gradient descent
// brings the iterate close to the minimiser and a few Newton steps on the
// stationarity system finish it off.

#include "nlscd/functionals.hpp"
#include "nlscd/grid.hpp"
#include "nlscd/spectral.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace nlscd::solver {

using spectral::PhysParams;

struct SolveConfig {
  int max_outer_iters = 5000;
  double step_init = 1.0;
  double armijo_c = 1e-4;
  /// Stop when the preconditioned projected-gradient norm drops below this.
  double grad_tol = 1e-7;
  /// Target for the strong-form Euler-Lagrange residual.
  double residual_tol = 1e-5;
  int restarts = 3;
  std::uint64_t seed = 42;
  /// Newton steps on the stationarity system after the descent.
  int newton_steps = 8;
  /// 0: use NLSCD_THREADS or the hardware concurrency.
  int threads = 0;
  specfun::SpecFunConfig specfun{};

  void validate() const;
};

struct RestartSummary {
  std::uint64_t seed = 0;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
  std::string message;
};

/// Minimum over the H^1 subspace q = 0 (no point-interaction component).
struct RestrictedResult {
  double value = 0.0;
  double grad_norm = 0.0;
  int iterations = 0;
  bool converged = false;
  std::optional<grid::DecomposedState> state;
};

enum class SolveMode { energy, action };

struct GroundStateReport {
  SolveMode mode = SolveMode::energy;
  std::optional<grid::DecomposedState> state;
  double omega_nu = 0.0;

  double energy = 0.0;        ///< F(u)
  double multiplier = 0.0;    ///< omega: (||u||_p^p - Q)/||u||^2 (mass mode) or the given omega
  double multiplier_stationary = 0.0;  ///< omega from the stationarity system
  double action = 0.0;        ///< S(u) at `multiplier`
  double nehari = 0.0;        ///< I(u) at `multiplier`
  double q_form = 0.0;
  double lp_norm_p = 0.0;     ///< ||u||_p^p
  double mass = 0.0;
  double q = 0.0;
  double lambda = 0.0;
  double d_estimate = 0.0;    ///< (p-2)/(2p) ||u||_p^p

  double grad_norm = 0.0;
  int iterations = 0;
  bool converged = false;
  std::string message;
  bool descent_monotone = true;

  double res_pde = 0.0;
  double res_bc = 0.0;
  bool positive = false;
  bool monotone = false;
  double log_slope = 0.0;           ///< fitted coefficient of -ln r in u near 0
  double log_slope_expected = 0.0;  ///< q / (2 pi)

  std::optional<RestrictedResult> restricted_energy;  ///< E_nu(mu), q = 0
  std::optional<RestrictedResult> restricted_action;  ///< d~_nu(omega), q = 0

  std::vector<RestartSummary> restarts;
  double restart_spread = 0.0;  ///< max relative spread of converged restart values
};

/// Ground state at fixed mass. params must be in mass mode with nu < 0 and 2 < p < 4.
GroundStateReport minimize_energy(const PhysParams& params, const grid::GridSpec& grid,
                                  const SolveConfig& cfg = {});

/// Minimiser of the action on the Nehari manifold. params in frequency mode, omega > omega_nu.
GroundStateReport minimize_action(const PhysParams& params, const grid::GridSpec& grid,
                                  const SolveConfig& cfg = {});

/// min of E = F restricted to q = 0 at mass mu.
RestrictedResult restricted_energy_minimum(const PhysParams& params, const grid::GridSpec& grid,
                                           const SolveConfig& cfg = {});

/// min of S over the Nehari manifold restricted to q = 0.
RestrictedResult restricted_action_minimum(const PhysParams& params, const grid::GridSpec& grid,
                                           const SolveConfig& cfg = {});

struct CrossValidationReport {
  double omega = 0.0;
  double omega_nu = 0.0;
  double action_of_ground_state = 0.0;
  double action_minimum = 0.0;
  double action_rel_gap = 0.0;
  double multiplier_formula = 0.0;
  double multiplier_rel_err = 0.0;
  double energy_identity_rel_err = 0.0;  ///< |2F - (p-2)/p N + omega mu| / (omega mu)
  bool action_pass = false;
  bool multiplier_pass = false;
  bool omega_pass = false;
  bool pass = false;
  GroundStateReport action_run;
};

/// Re-solve in action mode at the ground state's multiplier and compare.
CrossValidationReport cross_validate(const GroundStateReport& gs, const PhysParams& params,
                                     const grid::GridSpec& grid, const SolveConfig& cfg = {});

/// Number of worker threads for restarts.
int worker_threads(const SolveConfig& cfg);

}  // namespace nlscd::solver
