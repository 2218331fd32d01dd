#include "nlscd/specfun.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace nlscd::specfun {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double inf = std::numeric_limits<double>::infinity();

// sin(pi x) without the large argument error of std::sin(pi * x)
double sinpi(double x) {
  double r = std::fmod(x, 2.0);
  if (r < 0) r += 2.0;
  double sgn = 1.0;
  if (r > 1.0) {
    r -= 1.0;
    sgn = -1.0;
  }
  if (r > 0.5) r = 1.0 - r;
  return sgn * std::sin(pi * r);
}

double cospi(double x) {
  double r = std::fmod(std::fabs(x), 2.0);
  double sgn = 1.0;
  if (r > 1.0) r = 2.0 - r;
  if (r > 0.5) {
    r = 1.0 - r;
    sgn = -1.0;
  }
  // cos(pi r) = sin(pi (1/2 - r)); 0.5 - r is exact here
  return sgn * std::sin(pi * (0.5 - r));
}

// Lanczos g = 7, n = 9
constexpr double lanczos_g = 7.0;
constexpr double lanczos_c[9] = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

double gamma_pos(double x) {
  // x >= 1/2
  if (x > 171.7) return inf;
  double xm = x - 1.0;
  double s = lanczos_c[0];
  for (int k = 1; k < 9; ++k) s += lanczos_c[k] / (xm + k);
  double t = xm + lanczos_g + 0.5;
  // split the power to postpone overflow near x = 171
  double h = std::pow(t, 0.5 * (xm + 0.5));
  return std::sqrt(2.0 * pi) * h * (h * std::exp(-t)) * s;
}

double digamma_asympt(double x) {
  // x >= 10
  double x2 = 1.0 / (x * x);
  double series =
      x2 * (1.0 / 12 -
            x2 * (1.0 / 120 -
                  x2 * (1.0 / 252 -
                        x2 * (1.0 / 240 -
                              x2 * (1.0 / 132 - x2 * (691.0 / 32760 - x2 / 12.0))))));
  return std::log(x) - 0.5 / x - series;
}

int depth_for(int subdiv) {
  int d = 0;
  while ((1 << d) < subdiv && d < 30) ++d;
  return d;
}

template <class F>
double gk(F f, double lo, double hi, const SpecFunConfig& cfg) {
  double err = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 21>::integrate(
      f, lo, hi, depth_for(cfg.quad_max_subdiv), cfg.rel_tol, &err);
}

// int_0^inf e^{-zt} t^{a-1} (1+t)^{-a} dt split at t = 1
double gamma_u_integral(double a, double z, const SpecFunConfig& cfg) {
  // [0,1] with t = s^{1/a}: the t^{a-1} singularity disappears, leaving
  // algebraic endpoint behaviour that tanh-sinh integrates at full rate
  // integrate() grows its abscissa tables, so each thread keeps its own
  thread_local boost::math::quadrature::tanh_sinh<double> ts(15);
  double inv_a = 1.0 / a;
  auto f1 = [&](double s) {
    double t = std::pow(s, inv_a);
    return inv_a * std::exp(-z * t) * std::pow(1.0 + t, -a);
  };
  double err = 0.0;
  double head = ts.integrate(f1, 0.0, 1.0, 0.1 * cfg.rel_tol, &err);

  // [1,inf) with t = e^y; e^{ay}(1+e^y)^{-a} = (1+e^{-y})^{-a}.
  // Cut where e^{-z(t-1)} has dropped below e^{-45}.
  double ymax = std::log1p(45.0 / z);
  auto f2 = [&](double y) {
    double t = std::exp(y);
    return std::exp(-z * (t - 1.0)) * std::pow(1.0 + 1.0 / t, -a);
  };
  double tail = std::exp(-z) * gk(f2, 0.0, ymax, cfg);
  return head + tail;
}

// z^{-a} sum_k (a)_k^2 / k! (-1/z)^k truncated at its smallest term.
// Returns NaN when the smallest term is not below rel_tol.
double tricomi_asympt(double a, double z, const SpecFunConfig& cfg) {
  double term = 1.0, sum = 1.0, prev = inf;
  for (int k = 0; k < 200; ++k) {
    double next = term * (a + k) * (a + k) / ((k + 1) * (-z));
    if (std::fabs(next) >= std::fabs(term) && k > 0) break;
    if (std::fabs(next) >= prev) break;
    prev = std::fabs(term);
    term = next;
    sum += term;
    if (std::fabs(term) < 0.1 * cfg.rel_tol * std::fabs(sum))
      return std::pow(z, -a) * sum;
  }
  if (std::fabs(term) < cfg.rel_tol * std::fabs(sum)) return std::pow(z, -a) * sum;
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

void SpecFunConfig::validate() const {
  if (!(rel_tol > 0.0 && rel_tol <= 1e-6))
    throw std::invalid_argument("rel_tol must lie in (0, 1e-6]");
  if (quad_max_subdiv < 16) throw std::invalid_argument("quad_max_subdiv must be >= 16");
  if (!(asympt_switch_radius > 0.0))
    throw std::invalid_argument("asympt_switch_radius must be positive");
  if (!(kummer_z_budget > 0.0 && kummer_z_budget <= 709.0))
    throw std::invalid_argument("kummer_z_budget must lie in (0, 709]");
}

GreenParams::GreenParams(double lambda, double nu) : lambda_(lambda), nu_(nu) {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw std::domain_error("spectral shift lambda must be positive");
  if (!std::isfinite(nu)) throw std::domain_error("Coulomb charge nu must be finite");
  sqrt_lambda_ = std::sqrt(lambda);
  a_ = 0.5 + nu / (2.0 * sqrt_lambda_);
}

void GreenParams::require_admissible() const {
  if (!admissible())
    throw std::domain_error("Green's function needs 1/2 + nu/(2 sqrt(lambda)) > 0 (lambda > nu^2); got lambda = " +
                            std::to_string(lambda_) + ", nu = " + std::to_string(nu_));
}

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

double gamma(double x, const SpecFunConfig&) {
  if (std::isnan(x)) return x;
  if (is_nonpositive_integer(x)) {
    // right-hand limit at -n has sign (-1)^n
    return (std::fmod(-x, 2.0) == 0.0) ? inf : -inf;
  }
  if (x >= 0.5) return gamma_pos(x);
  double s = sinpi(x);
  double g = gamma_pos(1.0 - x);
  if (std::isinf(g)) return 0.0 * s;
  return pi / (s * g);
}

double digamma(double x, const SpecFunConfig&) {
  if (std::isnan(x)) return x;
  if (is_nonpositive_integer(x)) return -inf;
  if (x < 0.0) {
    // psi(x) = psi(1-x) - pi cot(pi x)
    return digamma(1.0 - x) - pi * cospi(x) / sinpi(x);
  }
  double acc = 0.0;
  while (x < 10.0) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  return acc + digamma_asympt(x);
}

double kummer_m(double a, double z, const SpecFunConfig& cfg) {
  if (!(a > 0.0)) throw std::domain_error("kummer_m: need a > 0");
  if (!(z >= 0.0)) throw std::domain_error("kummer_m: need z >= 0");
  if (z > cfg.kummer_z_budget)
    throw std::overflow_error("kummer_m: argument " + std::to_string(z) + " exceeds the exponent budget");
  double term = 1.0, sum = 1.0;
  for (int k = 0; k < 100000; ++k) {
    term *= (a + k) * z / ((k + 1.0) * (k + 1.0));
    sum += term;
    // terms decrease monotonically once k + 1 > z + a
    if (k + 1 > z && term < 0.25 * cfg.rel_tol * sum) break;
  }
  return sum;
}

double kummer_m_scaled(double a, double z, const SpecFunConfig& cfg) {
  return kummer_m(a, z, cfg) * std::exp(-z);
}

double tricomi_gamma_u(double a, double z, const SpecFunConfig& cfg) {
  if (!(a > 0.0)) throw std::domain_error("tricomi_u: need a > 0");
  if (!(z > 0.0)) throw std::domain_error("tricomi_u: need z > 0");
  if (z > cfg.asympt_switch_radius) {
    double u = tricomi_asympt(a, z, cfg);
    if (!std::isnan(u)) {
      // Gamma(a) overflows only for absurd a; the integral is used then
      double g = gamma(a, cfg);
      if (std::isfinite(g)) return g * u;
    }
  }
  return gamma_u_integral(a, z, cfg);
}

double tricomi_u(double a, double z, const SpecFunConfig& cfg) {
  if (!(a > 0.0)) throw std::domain_error("tricomi_u: need a > 0");
  if (!(z > 0.0)) throw std::domain_error("tricomi_u: need z > 0");
  if (z > cfg.asympt_switch_radius) {
    double u = tricomi_asympt(a, z, cfg);
    if (!std::isnan(u)) return u;
  }
  return gamma_u_integral(a, z, cfg) / gamma(a, cfg);
}

double tricomi_u_extended(double a, double z, const SpecFunConfig& cfg) {
  if (a > 0.0) return tricomi_u(a, z, cfg);
  if (is_nonpositive_integer(a))
    throw std::domain_error("tricomi_u_extended: a is a nonpositive integer");
  if (!(z > 0.0)) throw std::domain_error("tricomi_u: need z > 0");
  int m = static_cast<int>(std::ceil(-a)) + 1;
  double b = a + m;
  double up = tricomi_u(b + 1.0, z, cfg);
  double cur = tricomi_u(b, z, cfg);
  // U(c-1) = (2c + z - 1) U(c) - c^2 U(c+1), run downward from c = b
  for (double c = b; c > a + 0.5; c -= 1.0) {
    double down = (2.0 * c + z - 1.0) * cur - c * c * up;
    up = cur;
    cur = down;
  }
  return cur;
}

double green_value(const GreenParams& gp, double r, const SpecFunConfig& cfg) {
  gp.require_admissible();
  if (!(r > 0.0)) throw std::domain_error("green_value: need r > 0");
  double z = 2.0 * gp.sqrt_lambda() * r;
  return std::exp(-gp.sqrt_lambda() * r) * tricomi_gamma_u(gp.a(), z, cfg) / (2.0 * pi);
}

double phi_kernel(const GreenParams& gp, double r, const SpecFunConfig& cfg) {
  if (!(r > 0.0)) throw std::domain_error("phi_kernel: need r > 0");
  double z = 2.0 * gp.sqrt_lambda() * r;
  double pref = std::sqrt(r / (2.0 * pi)) * std::exp(-gp.sqrt_lambda() * r);
  if (gp.admissible()) return pref * tricomi_gamma_u(gp.a(), z, cfg);
  if (is_nonpositive_integer(gp.a()))
    throw std::domain_error("phi_kernel: lambda sits on a Friedrichs eigenvalue");
  return pref * gamma(gp.a(), cfg) * tricomi_u_extended(gp.a(), z, cfg);
}

double f_kernel(const GreenParams& gp, double r, const SpecFunConfig& cfg) {
  gp.require_admissible();
  if (!(r > 0.0)) throw std::domain_error("f_kernel: need r > 0");
  double z = 2.0 * gp.sqrt_lambda() * r;
  double g = gamma(gp.a(), cfg);
  return std::sqrt(2.0 * pi * r) / (g * g) * std::exp(-gp.sqrt_lambda() * r) *
         kummer_m(gp.a(), z, cfg);
}

double kernel_wronskian(const GreenParams& gp, const SpecFunConfig& cfg) {
  gp.require_admissible();
  double g = gamma(gp.a(), cfg);
  return 1.0 / (g * g);
}

}  // namespace nlscd::specfun
