#include "discrete_problem.hpp"

#include <cmath>
#include <stdexcept>

namespace nlscd::detail {

using Trip = Eigen::Triplet<double>;

DiscreteProblem::DiscreteProblem(grid::GridPtr grid, const spectral::PhysParams& params, bool restrict_q,
                                 const specfun::SpecFunConfig& cfg)
    : grid_(std::move(grid)), params_(params), restrict_q_(restrict_q), cfg_(cfg), n_(grid_->size() - 1) {
  const int N = grid_->size();
  auto ke = grid_->edge_weights();
  std::vector<Trip> t;
  for (int e = 0; e < N - 1; ++e) {
    const grid::EdgeStencil& s = grid_->edges()[e];
    for (int a = 0; a < s.count; ++a) {
      if (s.idx[a] == N - 1) continue;
      for (int b = 0; b < s.count; ++b) {
        if (s.idx[b] == N - 1) continue;
        t.emplace_back(s.idx[a], s.idx[b], ke[e] * s.c[a] * s.c[b]);
      }
    }
  }
  kin_.resize(n_, n_);
  kin_.setFromTriplets(t.begin(), t.end());
  double nu = params.nu;
  double lam = std::max({1.0, 4.0 * nu * nu});
  green_ = grid::make_green(grid_, lam, nu, cfg_);
  theta_ = spectral::theta(lam, nu, cfg_);
}

void DiscreteProblem::set_lambda(double lambda, Vec* x) {
  auto next = grid::make_green(grid_, lambda, params_.nu, cfg_);
  if (x) {
    double q = (*x)[n_];
    auto g0 = green_->values();
    auto g1 = next->values();
    for (int i = 0; i < n_; ++i) (*x)[i] += q * (g0[i] - g1[i]);
  }
  green_ = std::move(next);
  theta_ = spectral::theta(lambda, params_.nu, cfg_);
}

std::vector<double> DiscreteProblem::assemble_u(const Vec& x) const {
  auto g = green_->values();
  std::vector<double> u(n_ + 1);
  double q = x[n_];
  for (int i = 0; i < n_; ++i) u[i] = x[i] + q * g[i];
  u[n_] = q * g[n_];
  return u;
}

Scalars DiscreteProblem::scalars(const Vec& x) const {
  const int N = n_ + 1;
  auto w = grid_->area_weights();
  auto v = grid_->line_weights();
  auto ke = grid_->edge_weights();
  auto g = green_->values();
  const long double q = x[n_];
  const long double p = params_.p;
  auto phi = [&](int i) -> long double { return i < n_ ? static_cast<long double>(x[i]) : 0.0L; };

  long double kin = 0;
  for (int e = 0; e < N - 1; ++e) {
    const grid::EdgeStencil& s = grid_->edges()[e];
    long double d = 0;
    for (int k = 0; k < s.count; ++k) d += s.c[k] * phi(s.idx[k]);
    kin += ke[e] * d * d;
  }
  long double cou = 0, ph2 = 0, m = 0, np = 0;
  for (int i = 0; i < N; ++i) {
    long double f = phi(i);
    long double u = f + q * g[i];
    cou += v[i] * f * f;
    ph2 += w[i] * f * f;
    m += w[i] * u * u;
    long double au = std::fabs(u);
    np += w[i] * (p == 3.0L ? au * au * au : std::pow(au, p));
  }
  Scalars s;
  s.M = m;
  s.Np = np;
  s.Q = kin + params_.nu * cou + green_->lambda() * (ph2 - m) + (params_.alpha + theta_) * q * q;
  return s;
}

Gradients DiscreteProblem::gradients(const Vec& x) const {
  const int N = n_ + 1;
  auto w = grid_->area_weights();
  auto v = grid_->line_weights();
  auto g = green_->values();
  const double q = x[n_], lam = green_->lambda(), p = params_.p;
  Gradients gr;
  gr.q_half = Vec::Zero(N);
  gr.m_half = Vec::Zero(N);
  gr.n_p = Vec::Zero(N);
  gr.q_half.head(n_) = kin_ * x.head(n_);
  long double sq = 0, sm = 0, sn = 0;
  for (int i = 0; i < N; ++i) {
    double f = i < n_ ? x[i] : 0.0;
    double u = f + q * g[i];
    double nl = std::pow(std::fabs(u), p - 2.0) * u;
    if (i < n_) {
      gr.q_half[i] += params_.nu * v[i] * f - lam * q * w[i] * g[i];
      gr.m_half[i] = w[i] * u;
      gr.n_p[i] = w[i] * nl;
    }
    sq += w[i] * g[i] * u;
    sn += w[i] * g[i] * nl;
  }
  sm = sq;
  gr.q_half[n_] = static_cast<double>(-lam * sq + (params_.alpha + theta_) * q);
  gr.m_half[n_] = static_cast<double>(sm);
  gr.n_p[n_] = static_cast<double>(sn);
  mask(gr.q_half);
  mask(gr.m_half);
  mask(gr.n_p);
  return gr;
}

long double DiscreteProblem::energy(const Vec& x) const {
  Scalars s = scalars(x);
  return 0.5L * s.Q - s.Np / params_.p;
}

long double DiscreteProblem::action(const Vec& x, double omega) const {
  Scalars s = scalars(x);
  return 0.5L * s.Q + 0.5L * omega * s.M - s.Np / params_.p;
}

void DiscreteProblem::add_quadratic(std::vector<Trip>& t, double sigma) const {
  auto w = grid_->area_weights();
  auto v = grid_->line_weights();
  auto g = green_->values();
  const double lam = green_->lambda();
  for (int k = 0; k < kin_.outerSize(); ++k)
    for (SpMat::InnerIterator it(kin_, k); it; ++it) t.emplace_back(it.row(), it.col(), it.value());
  long double gg = 0;
  for (int i = 0; i < n_ + 1; ++i) gg += w[i] * g[i] * g[i];
  for (int i = 0; i < n_; ++i) {
    t.emplace_back(i, i, params_.nu * v[i] + sigma * w[i]);
    if (!restrict_q_) {
      double c = (sigma - lam) * w[i] * g[i];
      t.emplace_back(i, n_, c);
      t.emplace_back(n_, i, c);
    }
  }
  if (restrict_q_)
    t.emplace_back(n_, n_, 1.0);
  else
    t.emplace_back(n_, n_, static_cast<double>((sigma - lam) * gg) + params_.alpha + theta_);
}

void DiscreteProblem::factor_preconditioner(double sigma) {
  std::vector<Trip> t;
  add_quadratic(t, sigma);
  SpMat P(n_ + 1, n_ + 1);
  P.setFromTriplets(t.begin(), t.end());
  auto f = std::make_unique<Eigen::SimplicialLDLT<SpMat>>();
  f->compute(P);
  if (f->info() != Eigen::Success || !(f->vectorD().minCoeff() > 0.0))
    throw std::runtime_error("preconditioner is not positive definite (shift below the bottom of the spectrum)");
  pre_ = std::move(f);
}

Vec DiscreteProblem::precondition(const Vec& g) const {
  Vec y = pre_->solve(g);
  if (restrict_q_) y[n_] = 0.0;
  return y;
}

SpMat DiscreteProblem::lagrangian_hessian(const Vec& x, double omega) const {
  std::vector<Trip> t;
  add_quadratic(t, omega);
  auto w = grid_->area_weights();
  auto g = green_->values();
  const double q = x[n_], p = params_.p;
  long double sqq = 0;
  for (int i = 0; i < n_ + 1; ++i) {
    double f = i < n_ ? x[i] : 0.0;
    double u = f + q * g[i];
    double d2 = (p - 1.0) * w[i] * std::pow(std::fabs(u), p - 2.0);
    if (i < n_) {
      t.emplace_back(i, i, -d2);
      if (!restrict_q_) {
        t.emplace_back(i, n_, -d2 * g[i]);
        t.emplace_back(n_, i, -d2 * g[i]);
      }
    }
    sqq += d2 * g[i] * g[i];
  }
  if (!restrict_q_) t.emplace_back(n_, n_, -static_cast<double>(sqq));
  SpMat H(n_ + 1, n_ + 1);
  H.setFromTriplets(t.begin(), t.end());
  return H;
}

grid::DecomposedState DiscreteProblem::state(const Vec& x) const {
  std::vector<double> phi(n_ + 1, 0.0);
  for (int i = 0; i < n_; ++i) phi[i] = x[i];
  return grid::DecomposedState(grid::RadialFunction(grid_, std::move(phi), grid::Smoothness::h1_component),
                               restrict_q_ ? 0.0 : x[n_], green_);
}

Vec DiscreteProblem::from_state(const grid::DecomposedState& s) const {
  grid::DecomposedState t = s.green()->lambda() == green_->lambda() ? s : s.redecompose(green_);
  Vec x(n_ + 1);
  for (int i = 0; i < n_; ++i) x[i] = t.phi()[i];
  x[n_] = restrict_q_ ? 0.0 : t.q();
  return x;
}

}  // namespace nlscd::detail
