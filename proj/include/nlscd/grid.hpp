#pragma once

// Radial discretisation of R^2.
//
// Nodes are r_i = b log(1 + e^{xi_i}) with xi uniform, so they are geometric
// near the origin and evenly spaced far out. Integrals 2 pi int f r dr are
// trapezoid sums in xi with end corrections, which is spectrally accurate for
// functions that are smooth in log r near 0.

#include "nlscd/specfun.hpp"

#include <complex>
#include <cmath>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

namespace nlscd::grid {

struct GridSpec {
  int nodes = 2000;
  double r_min = 1e-6;
  double r_max = 40.0;
  /// Radius where the node spacing switches from geometric to uniform.
  double transition = 1.0;

  void validate() const;
  /// Default spec whose outer radius resolves a decay rate e^{-sqrt(lambda_ref) r}.
  static GridSpec for_decay(double lambda_ref, int nodes = 2000);
  /// All lengths divided by sqrt(max(1, lambda_ref)).
  GridSpec scaled_for(double lambda_ref) const;
};

/// Four-point stencil for d phi / d xi at the midpoint between two nodes,
/// with the ghost-node closures already folded in.
struct EdgeStencil {
  int idx[4];
  double c[4];
  int count;
};

class RadialGrid {
 public:
  explicit RadialGrid(const GridSpec& spec);

  int size() const { return static_cast<int>(r_.size()); }
  const GridSpec& spec() const { return spec_; }
  double r(int i) const { return r_[i]; }
  double r_min() const { return r_.front(); }
  double r_max() const { return r_.back(); }
  double step() const { return h_; }

  std::span<const double> radii() const { return r_; }
  std::span<const double> xi() const { return xi_; }
  /// dr/dxi at the nodes.
  std::span<const double> jacobian() const { return rp_; }
  /// w_i with sum_i w_i f(r_i) ~ 2 pi int_0^{R} f r dr.
  std::span<const double> area_weights() const { return w_; }
  /// v_i with sum_i v_i f(r_i) ~ 2 pi int_0^{R} f dr.
  std::span<const double> line_weights() const { return v_; }
  /// Weights of the squared edge derivatives in the kinetic energy.
  std::span<const double> edge_weights() const { return ke_; }
  const std::vector<EdgeStencil>& edges() const { return edges_; }

  double integrate(std::span<const double> f) const;
  double integrate_line(std::span<const double> f) const;
  /// Same sum on every second node with doubled trapezoid weights; the
  /// difference to integrate() estimates the quadrature error.
  double integrate_coarse(std::span<const double> f) const;

  /// d phi/d xi at edge e (between node e and e+1).
  template <class T>
  T edge_derivative(std::span<const T> phi, int e) const {
    const EdgeStencil& s = edges_[e];
    T d{};
    for (int k = 0; k < s.count; ++k) d += s.c[k] * phi[s.idx[k]];
    return d;
  }

  /// y = K phi, where phi^T K phi is the discrete 2 pi int |phi'|^2 r dr.
  std::vector<double> apply_kinetic(std::span<const double> phi) const;

 private:
  GridSpec spec_;
  double h_ = 0.0;
  std::vector<double> xi_, r_, rp_, w_, v_, ke_;
  std::vector<EdgeStencil> edges_;
};

using GridPtr = std::shared_ptr<const RadialGrid>;

enum class Smoothness { h1_component, green_component, generic };

/// Values of a radial profile on a grid. Real or complex.
template <class T>
class BasicRadialFunction {
 public:
  BasicRadialFunction() = default;
  BasicRadialFunction(GridPtr grid, std::vector<T> values,
                      Smoothness tag = Smoothness::generic)
      : grid_(std::move(grid)), v_(std::move(values)), tag_(tag) {
    if (!grid_) throw std::invalid_argument("RadialFunction: null grid");
    if (static_cast<int>(v_.size()) != grid_->size())
      throw std::invalid_argument("RadialFunction: value count does not match grid");
    for (const T& x : v_)
      if (!std::isfinite(std::abs(x)))
        throw std::invalid_argument("RadialFunction: non-finite value");
  }

  static BasicRadialFunction zeros(GridPtr grid, Smoothness tag = Smoothness::generic) {
    std::vector<T> v(grid->size(), T{});
    return BasicRadialFunction(std::move(grid), std::move(v), tag);
  }

  template <class F>
  static BasicRadialFunction sample(GridPtr grid, F f, Smoothness tag = Smoothness::generic) {
    std::vector<T> v(grid->size());
    for (int i = 0; i < grid->size(); ++i) v[i] = f(grid->r(i));
    return BasicRadialFunction(std::move(grid), std::move(v), tag);
  }

  const GridPtr& grid() const { return grid_; }
  const RadialGrid& mesh() const { return *grid_; }
  std::span<const T> values() const { return v_; }
  std::vector<T>& mutable_values() { return v_; }
  const T& operator[](int i) const { return v_[i]; }
  T& operator[](int i) { return v_[i]; }
  int size() const { return static_cast<int>(v_.size()); }
  Smoothness smoothness() const { return tag_; }

 private:
  GridPtr grid_;
  std::vector<T> v_;
  Smoothness tag_ = Smoothness::generic;
};

using RadialFunction = BasicRadialFunction<double>;
using ComplexRadialFunction = BasicRadialFunction<std::complex<double>>;

/// G_{lambda,nu} tabulated on a grid. Immutable and shareable.
class GreenTable {
 public:
  GreenTable(GridPtr grid, specfun::GreenParams gp, const specfun::SpecFunConfig& cfg = {});

  const GridPtr& grid() const { return grid_; }
  const specfun::GreenParams& params() const { return gp_; }
  double lambda() const { return gp_.lambda(); }
  double nu() const { return gp_.nu(); }
  std::span<const double> values() const { return g_; }
  double operator[](int i) const { return g_[i]; }
  /// ||G||_2^2 on the grid.
  double mass() const { return mass_; }

 private:
  GridPtr grid_;
  specfun::GreenParams gp_;
  std::vector<double> g_;
  double mass_ = 0.0;
};

using GreenPtr = std::shared_ptr<const GreenTable>;

GreenPtr make_green(GridPtr grid, double lambda, double nu, const specfun::SpecFunConfig& cfg = {});

/// u = phi + q G_{lambda,nu}, with lambda carried by the Green table.
template <class T>
class BasicDecomposedState {
 public:
  BasicDecomposedState(BasicRadialFunction<T> phi, T q, GreenPtr green)
      : phi_(std::move(phi)), q_(q), green_(std::move(green)) {
    if (!green_) throw std::invalid_argument("DecomposedState: null Green table");
    if (!phi_.grid() || phi_.grid()->size() != green_->grid()->size())
      throw std::invalid_argument("DecomposedState: phi and Green table live on different grids");
    green_->params().require_admissible();
    if (!std::isfinite(std::abs(q_))) throw std::invalid_argument("DecomposedState: non-finite q");
  }

  const BasicRadialFunction<T>& phi() const { return phi_; }
  BasicRadialFunction<T>& phi() { return phi_; }
  T q() const { return q_; }
  void set_q(T q) { q_ = q; }
  const GreenPtr& green() const { return green_; }
  double lambda() const { return green_->lambda(); }
  const GridPtr& grid() const { return phi_.grid(); }

  /// Pointwise u_i = phi_i + q G_i.
  std::vector<T> assemble() const {
    std::vector<T> u(phi_.size());
    auto g = green_->values();
    for (int i = 0; i < phi_.size(); ++i) u[i] = phi_[i] + q_ * g[i];
    return u;
  }

  /// Same u written with another shift: phi' = phi + q (G_old - G_new).
  BasicDecomposedState redecompose(GreenPtr other) const {
    auto g0 = green_->values();
    auto g1 = other->values();
    std::vector<T> v(phi_.values().begin(), phi_.values().end());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += q_ * (g0[i] - g1[i]);
    return BasicDecomposedState(BasicRadialFunction<T>(phi_.grid(), std::move(v), phi_.smoothness()),
                                q_, std::move(other));
  }

  BasicDecomposedState scaled(double beta) const {
    std::vector<T> v(phi_.values().begin(), phi_.values().end());
    for (auto& x : v) x *= beta;
    return BasicDecomposedState(BasicRadialFunction<T>(phi_.grid(), std::move(v), phi_.smoothness()),
                                q_ * beta, green_);
  }

 private:
  BasicRadialFunction<T> phi_;
  T q_;
  GreenPtr green_;
};

using DecomposedState = BasicDecomposedState<double>;
using ComplexDecomposedState = BasicDecomposedState<std::complex<double>>;

// ---- norms ----

/// sum_i w_i |f_i|^p, i.e. ||f||_p^p.
template <class T>
double lp_norm_pow(const RadialGrid& g, std::span<const T> f, double p) {
  if (!(p >= 1.0)) throw std::domain_error("lp_norm: need p >= 1");
  auto w = g.area_weights();
  long double s = 0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    double a = std::abs(f[i]);
    s += w[i] * (p == 2.0 ? a * a : std::pow(a, p));
  }
  return static_cast<double>(s);
}

template <class T>
double lp_norm(const BasicRadialFunction<T>& f, double p) {
  return std::pow(lp_norm_pow(f.mesh(), f.values(), p), 1.0 / p);
}

template <class T>
double lp_norm(const BasicDecomposedState<T>& u, double p) {
  auto v = u.assemble();
  return std::pow(lp_norm_pow<T>(*u.grid(), v, p), 1.0 / p);
}

/// ||u||_2^2.
template <class T>
double mass(const BasicDecomposedState<T>& u) {
  auto v = u.assemble();
  return lp_norm_pow<T>(*u.grid(), v, 2.0);
}

template <class T>
double mass(const BasicRadialFunction<T>& f) {
  return lp_norm_pow(f.mesh(), f.values(), 2.0);
}

/// ||grad phi||_2^2 = 2 pi int |phi'|^2 r dr (fourth-order staggered differences in xi).
template <class T>
double grad_norm_sq(const RadialGrid& g, std::span<const T> phi) {
  auto ke = g.edge_weights();
  long double s = 0;
  for (int e = 0; e < static_cast<int>(ke.size()); ++e) {
    double d = std::abs(g.edge_derivative(phi, e));
    s += ke[e] * d * d;
  }
  return static_cast<double>(s);
}

template <class T>
double grad_norm_sq(const BasicRadialFunction<T>& phi) {
  return grad_norm_sq(phi.mesh(), phi.values());
}

/// || |x|^{-1/2} phi ||_2^2 = 2 pi int |phi|^2 dr (unsigned, no factor nu).
template <class T>
double coulomb_term(const RadialGrid& g, std::span<const T> phi) {
  auto v = g.line_weights();
  long double s = 0;
  for (std::size_t i = 0; i < phi.size(); ++i) {
    double a = std::abs(phi[i]);
    s += v[i] * a * a;
  }
  return static_cast<double>(s);
}

template <class T>
double coulomb_term(const BasicRadialFunction<T>& phi) {
  return coulomb_term(phi.mesh(), phi.values());
}

// ---- rearrangement ----

/// Symmetric decreasing rearrangement of a nonnegative grid function.
/// Values are sorted (stably) in decreasing order together with their cell
/// measures w_i; node j receives the value the sorted step function takes at
/// the midpoint of node j's own measure interval. Throws std::domain_error on
/// negative input.
RadialFunction rearrange(const RadialFunction& f);

/// Distribution function |{f > t}| evaluated with the grid weights.
double level_set_measure(const RadialFunction& f, double t);

}  // namespace nlscd::grid
