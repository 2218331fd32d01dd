#include "nlscd/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace nlscd::grid {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

double softplus(double x) { return x > 0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }
double sigmoid(double x) { return x > 0 ? 1.0 / (1.0 + std::exp(-x)) : std::exp(x) / (1.0 + std::exp(x)); }
// inverse of softplus
double softplus_inv(double y) { return y > 30 ? y + std::log(-std::expm1(-y)) : std::log(std::expm1(y)); }

}  // namespace

void GridSpec::validate() const {
  if (nodes < 64) throw std::invalid_argument("grid needs at least 64 nodes");
  if (!(r_min > 0.0)) throw std::invalid_argument("r_min must be positive");
  if (!(r_max > r_min)) throw std::invalid_argument("r_max must exceed r_min");
  if (r_min > 1e-5 * r_max)
    throw std::invalid_argument("r_min must be at most 1e-5 r_max to resolve the logarithmic singularity");
  if (!(transition > 0.0)) throw std::invalid_argument("transition radius must be positive");
}

GridSpec GridSpec::for_decay(double lambda_ref, int nodes) {
  GridSpec s;
  s.nodes = nodes;
  return s.scaled_for(lambda_ref);
}

GridSpec GridSpec::scaled_for(double lambda_ref) const {
  GridSpec s = *this;
  double k = 1.0 / std::sqrt(std::max(1.0, lambda_ref));
  s.r_min *= k;
  s.r_max *= k;
  s.transition *= k;
  return s;
}

RadialGrid::RadialGrid(const GridSpec& spec) : spec_(spec) {
  spec.validate();
  const int n = spec.nodes;
  const double b = spec.transition;
  const double x0 = softplus_inv(spec.r_min / b);
  const double x1 = softplus_inv(spec.r_max / b);
  h_ = (x1 - x0) / (n - 1);

  xi_.resize(n);
  r_.resize(n);
  rp_.resize(n);
  for (int i = 0; i < n; ++i) {
    xi_[i] = x0 + i * h_;
    r_[i] = b * softplus(xi_[i]);
    rp_[i] = b * sigmoid(xi_[i]);
  }
  r_.front() = spec.r_min;
  r_.back() = spec.r_max;

  // trapezoid in xi; Gregory end correction on the right, and on the left the
  // half weight plus the disc r < r_min where the integrand is ~ constant
  std::vector<double> gam(n, 1.0);
  gam[0] = 0.5;
  gam[n - 1] = 0.5;
  const double grg[5][5] = {
      {1, -1, 0, 0, 0}, {1, -2, 1, 0, 0}, {1, -3, 3, -1, 0}, {1, -4, 6, -4, 1}, {0, 0, 0, 0, 0}};
  const double coef[4] = {-1.0 / 12, -1.0 / 24, -19.0 / 720, -3.0 / 160};
  for (int k = 0; k < 4; ++k)
    for (int j = 0; j < 5; ++j) gam[n - 1 - j] += coef[k] * grg[k][j];

  w_.resize(n);
  v_.resize(n);
  for (int i = 0; i < n; ++i) {
    w_[i] = two_pi * r_[i] * rp_[i] * h_ * gam[i];
    v_[i] = two_pi * rp_[i] * h_ * gam[i];
  }
  w_[0] += std::numbers::pi * spec.r_min * spec.r_min;
  v_[0] += two_pi * spec.r_min;
  for (double w : w_)
    if (!(w > 0.0)) throw std::runtime_error("grid produced a nonpositive quadrature weight");

  ke_.resize(n - 1);
  edges_.resize(n - 1);
  const double c0 = 1.0 / (24.0 * h_);
  for (int e = 0; e < n - 1; ++e) {
    double xm = xi_[e] + 0.5 * h_;
    double rm = b * softplus(xm), rpm = b * sigmoid(xm);
    ke_[e] = two_pi * rm / rpm * h_;

    // nodes e-1, e, e+1, e+2 with weights (1, -27, 27, -1)/24h
    int idx[4] = {e - 1, e, e + 1, e + 2};
    double c[4] = {c0, -27 * c0, 27 * c0, -c0};
    EdgeStencil s{};
    s.count = 0;
    auto add = [&](int j, double cj) {
      for (int k = 0; k < s.count; ++k)
        if (s.idx[k] == j) {
          s.c[k] += cj;
          return;
        }
      s.idx[s.count] = j;
      s.c[s.count] = cj;
      ++s.count;
    };
    for (int k = 0; k < 4; ++k) {
      int j = idx[k];
      if (j < 0) {
        add(-j, c[k]);  // even reflection at the origin
      } else if (j >= n) {
        add(n - 1, 2 * c[k]);  // linear extrapolation past R_max
        add(n - 2, -c[k]);
      } else {
        add(j, c[k]);
      }
    }
    edges_[e] = s;
  }
}

double RadialGrid::integrate(std::span<const double> f) const {
  long double s = 0;
  for (std::size_t i = 0; i < f.size(); ++i) s += w_[i] * f[i];
  return static_cast<double>(s);
}

double RadialGrid::integrate_line(std::span<const double> f) const {
  long double s = 0;
  for (std::size_t i = 0; i < f.size(); ++i) s += v_[i] * f[i];
  return static_cast<double>(s);
}

double RadialGrid::integrate_coarse(std::span<const double> f) const {
  const int n = size();
  long double s = std::numbers::pi * r_[0] * r_[0] * f[0];
  int last = (n - 1) % 2 == 0 ? n - 1 : n - 2;
  for (int i = 0; i <= last; i += 2) {
    double gam = (i == 0 || i == last) ? 0.5 : 1.0;
    s += two_pi * r_[i] * rp_[i] * 2.0 * h_ * gam * f[i];
  }
  return static_cast<double>(s);
}

std::vector<double> RadialGrid::apply_kinetic(std::span<const double> phi) const {
  std::vector<double> y(phi.size(), 0.0);
  for (int e = 0; e < static_cast<int>(edges_.size()); ++e) {
    const EdgeStencil& s = edges_[e];
    double d = 0;
    for (int k = 0; k < s.count; ++k) d += s.c[k] * phi[s.idx[k]];
    d *= ke_[e];
    for (int k = 0; k < s.count; ++k) y[s.idx[k]] += s.c[k] * d;
  }
  return y;
}

GreenTable::GreenTable(GridPtr grid, specfun::GreenParams gp, const specfun::SpecFunConfig& cfg)
    : grid_(std::move(grid)), gp_(gp) {
  gp_.require_admissible();
  g_ = specfun::green_table(gp_, *grid_, cfg);
  mass_ = lp_norm_pow<double>(*grid_, g_, 2.0);
}

GreenPtr make_green(GridPtr grid, double lambda, double nu, const specfun::SpecFunConfig& cfg) {
  return std::make_shared<const GreenTable>(std::move(grid), specfun::GreenParams(lambda, nu), cfg);
}

}  // namespace nlscd::grid
