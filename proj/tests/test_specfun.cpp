#include "nlscd/grid.hpp"
#include "nlscd/specfun.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace nlscd;
using specfun::GreenParams;

TEST_CASE("gamma against boost and frozen values") {
  for (double x = -4.75; x < 30.0; x += 0.37) {
    if (specfun::is_nonpositive_integer(x)) continue;
    CHECK(oracle::rel(specfun::gamma(x), oracle::gamma(x)) < 1e-12);
  }
  for (const auto& t : oracle::gamma_table) CHECK(oracle::rel(specfun::gamma(t.x), t.gamma) < 1e-13);
}

TEST_CASE("gamma and digamma poles give the right-hand limit") {
  CHECK(specfun::is_nonpositive_integer(0.0));
  CHECK(specfun::is_nonpositive_integer(-3.0));
  CHECK_FALSE(specfun::is_nonpositive_integer(-2.5));
  CHECK(specfun::gamma(0.0) == std::numeric_limits<double>::infinity());
  CHECK(specfun::gamma(-1.0) == -std::numeric_limits<double>::infinity());
  CHECK(specfun::gamma(-2.0) == std::numeric_limits<double>::infinity());
  CHECK(specfun::digamma(-2.0) == -std::numeric_limits<double>::infinity());
}

TEST_CASE("digamma against boost and frozen values") {
  for (double x = -4.9; x < 40.0; x += 0.29) {
    if (specfun::is_nonpositive_integer(x)) continue;
    double ref = oracle::digamma(x);
    CHECK(std::abs(specfun::digamma(x) - ref) < 1e-12 * std::max(1.0, std::abs(ref)));
  }
  for (const auto& t : oracle::gamma_table) CHECK(oracle::rel(specfun::digamma(t.x), t.psi) < 1e-13);
}

TEST_CASE("kummer M against boost and frozen values") {
  for (double a : {0.05, 0.3, 0.5, 1.2, 3.7})
    for (double z : {0.0, 0.01, 0.7, 3.0, 12.0, 45.0, 200.0})
      CHECK(oracle::rel(specfun::kummer_m(a, z), oracle::kummer_m(a, z)) < 1e-11);
  for (const auto& t : oracle::kummer_table) CHECK(oracle::rel(specfun::kummer_m(t.a, t.z), t.m) < 1e-12);
  CHECK(oracle::rel(specfun::kummer_m_scaled(0.75, 2.0), 5.1955031736720331047 * std::exp(-2.0)) < 1e-12);
  CHECK_THROWS_AS(specfun::kummer_m(0.5, 800.0), std::overflow_error);
}

TEST_CASE("tricomi U against quadrature oracle and frozen values") {
  for (double a : {0.02, 0.3, 0.5, 0.9, 1.6, 4.0})
    for (double z : {0.003, 0.2, 1.0, 7.5, 29.0, 31.0, 90.0})
      CHECK(oracle::rel(specfun::tricomi_u(a, z), oracle::tricomi_u(a, z)) < 1e-10);
  for (const auto& t : oracle::tricomi_table)
    CHECK(oracle::rel(specfun::tricomi_u_extended(t.a, t.z), t.u) < 1e-11);
  CHECK(oracle::rel(specfun::tricomi_gamma_u(0.6, 1.3), 0.71703696799497247437 * oracle::gamma(0.6)) < 1e-12);
  CHECK_THROWS_AS(specfun::tricomi_u(-0.5, 1.0), std::domain_error);
  CHECK_THROWS_AS(specfun::tricomi_u(0.5, 0.0), std::domain_error);
}

TEST_CASE("free green function is K0 / 2pi") {
  for (double lambda : {1.0, 4.0}) {
    GreenParams gp(lambda, 0.0);
    for (double r = 1e-3; r <= 10.0; r *= 1.3) {
      double g = specfun::green_value(gp, r);
      CHECK(oracle::rel(g, oracle::green_free(lambda, r)) < 1e-10);
      CHECK(oracle::rel(g, oracle::bessel_k0_integral(std::sqrt(lambda) * r) / (2.0 * oracle::pi)) < 1e-9);
    }
  }
}

TEST_CASE("coulomb green function against frozen values and the integral oracle") {
  for (const auto& t : oracle::green_table) {
    GreenParams gp(t.lambda, t.nu);
    CHECK(oracle::rel(specfun::green_value(gp, t.r), t.g) < 1e-11);
    CHECK(oracle::rel(specfun::green_value(gp, t.r), oracle::green(t.lambda, t.nu, t.r)) < 1e-9);
  }
}

TEST_CASE("green function is positive and decreasing in r and lambda") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int k = 0; k < 50; ++k) {
    double nu = -3.0 + 5.0 * U(rng);
    double lambda = std::max(nu * nu, 0.0) * (1.0 + 0.01 + 3.0 * U(rng)) + 0.05 + U(rng);
    GreenParams gp(lambda, nu), gp2(lambda * 1.1, nu);
    REQUIRE(gp.admissible());
    double prev = std::numeric_limits<double>::infinity();
    for (double r = 1e-4; r < 20.0; r *= 1.7) {
      double g = specfun::green_value(gp, r);
      CHECK(g > 0.0);
      CHECK(g < prev);
      CHECK(specfun::green_value(gp2, r) < g);
      prev = g;
    }
  }
}

TEST_CASE("inadmissible parameters are rejected") {
  GreenParams bad(0.5, -1.0);
  CHECK_FALSE(bad.admissible());
  CHECK_THROWS_AS(bad.require_admissible(), std::domain_error);
  CHECK_THROWS_AS(specfun::green_value(bad, 1.0), std::domain_error);
  CHECK_THROWS(GreenParams(-1.0, 0.0));
  CHECK_THROWS(GreenParams(0.0, 0.0));
}

TEST_CASE("config validation") {
  specfun::SpecFunConfig c;
  CHECK_NOTHROW(c.validate());
  c.rel_tol = 1e-3;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = {};
  c.quad_max_subdiv = 8;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("kernel pair wronskian") {
  for (auto [lambda, nu] : {std::pair{4.0, -1.0}, {2.0, 0.0}, {9.0, 2.0}, {1.2, -1.0}}) {
    GreenParams gp(lambda, nu);
    double w = specfun::kernel_wronskian(gp);
    CHECK(oracle::rel(w, std::pow(oracle::gamma(gp.a()), -2.0)) < 1e-12);
    for (double r : {0.1, 1.0, 3.0}) {
      double h = 1e-4 * r;
      auto P = [&](double x) { return specfun::phi_kernel(gp, x); };
      auto F = [&](double x) { return specfun::f_kernel(gp, x); };
      double dP = (P(r - 2 * h) - 8 * P(r - h) + 8 * P(r + h) - P(r + 2 * h)) / (12 * h);
      double dF = (F(r - 2 * h) - 8 * F(r - h) + 8 * F(r + h) - F(r + 2 * h)) / (12 * h);
      CHECK(oracle::rel(P(r) * dF - dP * F(r), w) < 1e-7);
    }
  }
}

TEST_CASE("phi kernel is sqrt(2 pi r) G") {
  GreenParams gp(4.0, -1.0);
  for (double r : {0.01, 0.5, 2.0})
    CHECK(oracle::rel(specfun::phi_kernel(gp, r), std::sqrt(2 * oracle::pi * r) * specfun::green_value(gp, r)) <
          1e-13);
}

TEST_CASE("green L2 norm for lambda = 1, nu = 0") {
  grid::RadialGrid g(grid::GridSpec{4000, 1e-8, 40.0, 1.0});
  auto n = specfun::green_norm(GreenParams(1.0, 0.0), 2.0, g);
  CHECK(oracle::rel(n.value, 1.0 / (4.0 * oracle::pi)) < 1e-8);
  CHECK_FALSE(n.tail_warning);
  CHECK(n.error_estimate < 1e-8);
}

TEST_CASE("green norm flags a truncated domain") {
  grid::RadialGrid g(grid::GridSpec{1000, 1e-6, 3.0, 1.0});
  auto n = specfun::green_norm(GreenParams(1.0, 0.0), 2.0, g);
  CHECK(n.tail_warning);
}
