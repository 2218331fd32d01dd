#pragma once

// Reference values computed outside the library: Boost.Math, std::cyl_bessel_k,
// plain quadratures, and a table of high-precision values (40 digits, frozen).

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/hypergeometric_1F1.hpp>

#include <cmath>
#include <numbers>

namespace oracle {

inline constexpr double pi = std::numbers::pi;

/// K_0 by the integral int_0^inf e^{-x cosh t} dt, trapezoid in t.
inline double bessel_k0_integral(double x) {
  const double h = 0.005;
  long double s = 0.5L * std::exp(-x);
  for (int k = 1;; ++k) {
    double t = k * h;
    double e = x * std::cosh(t);
    if (e > 745.0) break;
    s += std::exp(-e);
  }
  return static_cast<double>(s * h);
}

/// G_{lambda,0}(r) = K_0(sqrt(lambda) r) / (2 pi).
inline double green_free(double lambda, double r) {
  return std::cyl_bessel_k(0.0, std::sqrt(lambda) * r) / (2.0 * pi);
}

inline double digamma(double x) { return boost::math::digamma(x); }
inline double gamma(double x) { return boost::math::tgamma(x); }
inline double kummer_m(double a, double z) { return boost::math::hypergeometric_1F1(a, 1.0, z); }

/// Gamma(a) U(a,1,z) = int_0^inf e^{-zt} t^{a-1} (1+t)^{-a} dt, a > 0, by the
/// trapezoid rule in y = ln t on [-40, y_max] with its first endpoint correction,
/// plus the analytic left tail e^{-40a}/a.
inline double tricomi_gamma_u(double a, double z) {
  const double h = 0.004, y0 = -40.0;
  auto f = [&](double y) {
    double t = std::exp(y);
    return std::exp(-z * t + a * y - a * std::log1p(t));
  };
  long double s = 0.5L * f(y0);
  for (int k = 1;; ++k) {
    double y = y0 + k * h;
    if (z * std::exp(y) > 745.0 || (z == 0.0 && y > 60.0)) break;
    s += f(y);
  }
  return static_cast<double>(s * h) + h * h * a * f(y0) / 12.0 + std::exp(a * y0) / a;
}

inline double tricomi_u(double a, double z) { return tricomi_gamma_u(a, z) / boost::math::tgamma(a); }

/// G_{lambda,nu}(r) = e^{-sl r} Gamma(a) U(a,1,2 sl r) / (2 pi).
inline double green(double lambda, double nu, double r) {
  double sl = std::sqrt(lambda), a = 0.5 + nu / (2.0 * sl);
  return std::exp(-sl * r) * tricomi_gamma_u(a, 2.0 * sl * r) / (2.0 * pi);
}

inline double theta(double lambda, double nu) {
  double sl = std::sqrt(lambda), a = 0.5 + nu / (2.0 * sl);
  return (boost::math::digamma(a) + 2.0 * 0.57721566490153286061 + std::log(2.0 * sl)) / (2.0 * pi);
}

struct UVal { double a, z, u; };
inline constexpr UVal tricomi_table[] = {
    {0.6, 1.3, 0.71703696799497247437},      {-0.3, 2.0, 1.1806518688641562993},
    {1.7, 35.0, 0.0021940802987244496991},   {2.2, 0.01, 2.7276180321131034665},
    {0.05, 0.2, 1.0777577089619293068},      {3.5, 80.0, 1.8868903564104612828e-7},
};

struct MVal { double a, z, m; };
inline constexpr MVal kummer_table[] = {
    {0.75, 2.0, 5.1955031736720331047},
    {0.3, 50.0, 1.1321646474133814664e+20},
    {2.5, 0.1, 1.2730073459192996762},
};

struct GPVal { double x, gamma, psi; };
inline constexpr GPVal gamma_table[] = {
    {0.1, 9.5135076986687312858, -10.423754940411076232},
    {0.5, 1.7724538509055160273, -1.9635100260214234794},
    {1.7, 0.90863873285329044156, 0.20854787487349392145},
    {-0.3, -4.3268511088251927205, 2.1133097796353988734},
    {12.5, 136843365.46556585726, 2.4851956512749120482},
};

struct GVal { double lambda, nu, r, g; };
inline constexpr GVal green_table[] = {
    {4.0, -1.0, 0.1, 0.54974524656906332348},
    {4.0, -1.0, 1.0, 0.05448077234967826111},
    {4.0, -1.0, 3.0, 0.00076471904646435632943},
    {1.5, -1.0, 0.5, 0.87666845190883919733},
    {9.0, 2.0, 0.7, 0.0058356384700766149065},
    {1.0001, -1.0, 2.0, 861.50734417676867839},
};

struct TVal { double lambda, nu, theta; };
inline constexpr TVal theta_table[] = {
    {4.0, -1.0, -0.26845107377717180632},
    {1.5, -1.0, -1.477643730362544636},
    {100.0, -2.0, 0.25286204068444323631},
    {2.0, 0.5, 0.14427737107559472265},
};

struct WVal { double nu, alpha, omega; };
inline constexpr WVal omega_table[] = {
    {-1.0, 0.0, 10.398390228260566118},
    {-0.5, 1.0, 0.47043623612808148581},
    {-2.0, -0.5, 948.14824264439864929},
    {-1.0, 2.0, 1.3578778079397829293},
};

/// Second eigenvalue for nu = -1, alpha = 0 (as lambda = -E).
inline constexpr double ladder_second_lambda = 0.20117550646341106888;

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace oracle
