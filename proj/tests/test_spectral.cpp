#include "nlscd/spectral.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace nlscd;
using spectral::PhysParams;

TEST_CASE("theta against frozen values and the digamma oracle") {
  for (const auto& t : oracle::theta_table) CHECK(std::abs(spectral::theta(t.lambda, t.nu) - t.theta) < 1e-13);
  for (double nu : {-2.0, -0.3, 0.0, 1.5})
    for (double lambda : {0.5, 4.5, 17.0, 1e4})
      if (0.5 + nu / (2 * std::sqrt(lambda)) > 0)
        CHECK(std::abs(spectral::theta(lambda, nu) - oracle::theta(lambda, nu)) < 1e-12);
}

TEST_CASE("theta is increasing and sandwiched above nu^2") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (double nu : {-0.5, -1.0, -2.0, -3.3}) {
    std::vector<double> ls;
    for (int k = 0; k < 200; ++k) ls.push_back(nu * nu * std::pow(10.0, 1e-4 + 6.0 * U(rng)));
    std::sort(ls.begin(), ls.end());
    double prev = -std::numeric_limits<double>::infinity();
    for (double l : ls) {
      double t = spectral::theta(l, nu);
      auto b = spectral::theta_bounds(l, nu);
      CHECK(t > prev);
      CHECK(b.lower <= t);
      CHECK(t <= b.upper);
      prev = t;
    }
  }
}

TEST_CASE("theta approaches ln(lambda)/4pi") {
  for (double nu : {-0.5, -1.0, -2.0})
    CHECK(std::abs(spectral::theta(1e12, nu) / (std::log(1e12) / (4 * oracle::pi)) - 1.0) < 0.01);
}

TEST_CASE("omega_nu against frozen values") {
  for (const auto& t : oracle::omega_table) {
    auto info = spectral::solve_omega_nu_info(t.nu, t.alpha);
    CHECK(info.converged);
    CHECK(oracle::rel(info.value, t.omega) < 1e-10);
    CHECK(std::abs(info.residual) < 1e-12);
    CHECK(info.value > t.nu * t.nu);
  }
}

TEST_CASE("omega_nu inverse construction") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int k = 0; k < 30; ++k) {
    double nu = -0.2 - 2.8 * U(rng);
    double l0 = nu * nu * (1.0 + std::pow(10.0, -3.0 + 5.0 * U(rng)));
    double alpha = -spectral::theta(l0, nu);
    CHECK(oracle::rel(spectral::solve_omega_nu(nu, alpha), l0) < 1e-10);
  }
}

TEST_CASE("omega_nu decreases as alpha grows") {
  double prev = std::numeric_limits<double>::infinity();
  for (double alpha = -2.0; alpha <= 3.0; alpha += 0.25) {
    double w = spectral::solve_omega_nu(-1.0, alpha);
    CHECK(w < prev);
    prev = w;
  }
}

TEST_CASE("omega_nu rejects nu >= 0") {
  CHECK_THROWS(spectral::solve_omega_nu(0.0, 0.0));
  CHECK_THROWS(spectral::solve_omega_nu(0.5, 0.0));
}

TEST_CASE("friedrichs ladder formula") {
  auto e = spectral::friedrichs_eigenvalues(-1.0, 3);
  REQUIRE(e.size() == 4);
  CHECK(e[0] == doctest::Approx(-1.0));
  CHECK(e[1] == doctest::Approx(-1.0 / 9));
  CHECK(e[3] == doctest::Approx(-1.0 / 49));
}

TEST_CASE("theta poles sit on the friedrichs eigenvalues") {
  for (double nu : {-0.5, -1.0, -2.0}) {
    auto poles = spectral::locate_theta_poles(nu, 6);
    auto fr = spectral::friedrichs_eigenvalues(nu, 5);
    REQUIRE(poles.size() == 6);
    for (int n = 0; n < 6; ++n) CHECK(std::abs(poles[n] - fr[n]) < 1e-10);
  }
}

TEST_CASE("eigenvalue ladder interlaces the friedrichs values") {
  auto rep = spectral::eigenvalue_ladder(PhysParams::mass(-1.0, 0.0, 3.0, 1.0), 5);
  CHECK(rep.all_converged);
  REQUIRE(rep.ladder.size() == 5);
  CHECK(oracle::rel(-rep.ladder[0], 10.398390228260566118) < 1e-10);
  CHECK(oracle::rel(-rep.ladder[1], oracle::ladder_second_lambda) < 1e-10);
  CHECK(rep.ladder[0] < rep.friedrichs[0]);
  for (std::size_t n = 1; n < rep.ladder.size(); ++n) {
    CHECK(rep.friedrichs[n - 1] < rep.ladder[n]);
    CHECK(rep.ladder[n] < rep.friedrichs[n]);
  }
  for (const auto& r : rep.roots) CHECK(std::abs(r.residual) < 1e-10);
}

TEST_CASE("ladder eigenfunctions satisfy the boundary condition") {
  // Phi at a ladder eigenvalue has g1 = 2 pi alpha g0 in the small-r expansion.
  const double nu = -1.0, alpha = 0.7;
  auto rep = spectral::eigenvalue_ladder(PhysParams::mass(nu, alpha, 3.0, 1.0), 2);
  for (double E : rep.ladder) {
    specfun::GreenParams gp(-E, nu);
    std::vector<double> r, f;
    for (double x = 1e-12; x < 1e-8; x *= 1.5) {
      r.push_back(x);
      f.push_back(specfun::phi_kernel(gp, x));
    }
    auto c = spectral::fit_boundary_coefficients(r, f, static_cast<int>(r.size()));
    CHECK(std::abs(c.g1 - 2 * oracle::pi * alpha * c.g0) < 1e-5 * std::abs(c.g0));
  }
}

TEST_CASE("resolvent solves the s-wave equation") {
  specfun::GreenParams gp(3.0, -1.0);
  auto grid = std::make_shared<grid::RadialGrid>(grid::GridSpec{4000, 1e-6, 40.0, 1.0});
  auto g = grid::RadialFunction::sample(grid, [](double r) { return r * std::sqrt(r) * std::exp(-r); });
  auto f = spectral::resolvent_apply(gp, g);
  // -f'' - f/(4 r^2) + nu f / r + lambda f = g at interior nodes, by finite differences on f(r)
  auto r = grid->radii();
  double worst = 0.0;
  for (int i = 5; i < grid->size() - 5; ++i) {
    if (r[i] < 0.5 || r[i] > 6.0) continue;
    double hm = r[i] - r[i - 1], hp = r[i + 1] - r[i];
    double d2 = 2.0 * (hm * f[i + 1] - (hm + hp) * f[i] + hp * f[i - 1]) / (hm * hp * (hm + hp));
    double lhs = -d2 - f[i] / (4 * r[i] * r[i]) + gp.nu() * f[i] / r[i] + gp.lambda() * f[i];
    worst = std::max(worst, std::abs(lhs - g[i]) / std::abs(g[i]));
  }
  CHECK(worst < 1e-4);
  // Friedrichs-type: no -sqrt(r) ln r term at the origin
  auto c = spectral::fit_boundary_coefficients(r, f.values(), 20);
  CHECK(std::abs(c.g0) < 1e-3 * std::abs(c.g1));
}

TEST_CASE("phys params validation") {
  CHECK_NOTHROW(PhysParams::mass(-1, 0, 3, 1).validate_for_energy());
  CHECK_THROWS_AS(PhysParams::mass(-1, 0, 4.5, 1).validate_for_energy(), std::invalid_argument);
  CHECK_THROWS_AS(PhysParams::mass(1, 0, 3, 1).validate_for_energy(), std::invalid_argument);
  CHECK_THROWS_AS(PhysParams::mass(-1, 0, 3, -1).validate_for_energy(), std::invalid_argument);
  CHECK_THROWS_AS(PhysParams::frequency(-1, 0, 3, 5.0).validate_for_action(), std::invalid_argument);
  CHECK_NOTHROW(PhysParams::frequency(-1, 0, 5, 11.0).validate_for_action());
  CHECK_THROWS_AS(PhysParams::mass(-1, 0, 3, 1).omega(), std::logic_error);
  CHECK_THROWS_AS(PhysParams::mass(-1, 0, 2.0, 1).validate(), std::invalid_argument);
}
