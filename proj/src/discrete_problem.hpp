#pragma once

#include "nlscd/grid.hpp"
#include "nlscd/spectral.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include <memory>

namespace nlscd::detail {

using Vec = Eigen::VectorXd;
using SpMat = Eigen::SparseMatrix<double>;

struct Scalars {
  long double Q = 0;   // quadratic form
  long double M = 0;   // ||u||^2
  long double Np = 0;  // ||u||_p^p
};

struct Gradients {
  Vec q_half;  // grad Q / 2
  Vec m_half;  // grad M / 2
  Vec n_p;     // grad Np / p
};

// Unknowns x = (phi_0 .. phi_{N-2}, q); phi_{N-1} = 0.
class DiscreteProblem {
 public:
  DiscreteProblem(grid::GridPtr grid, const spectral::PhysParams& params, bool restrict_q,
                  const specfun::SpecFunConfig& cfg);

  int n() const { return n_; }
  int dim() const { return n_ + 1; }
  bool restricted() const { return restrict_q_; }
  double lambda() const { return green_->lambda(); }
  double theta() const { return theta_; }
  const grid::GreenPtr& green() const { return green_; }
  const grid::GridPtr& grid() const { return grid_; }
  const spectral::PhysParams& params() const { return params_; }

  // Change lambda; x is rewritten so that u is unchanged.
  void set_lambda(double lambda, Vec* x);

  std::vector<double> assemble_u(const Vec& x) const;
  Scalars scalars(const Vec& x) const;
  Gradients gradients(const Vec& x) const;

  // mass-mode energy F and action S at omega, long double accumulations
  long double energy(const Vec& x) const;
  long double action(const Vec& x, double omega) const;

  // Hess(Q/2) + sigma Hess(M/2); throws if not positive definite
  void factor_preconditioner(double sigma);
  Vec precondition(const Vec& g) const;

  // Hess(Q/2) + omega Hess(M/2) - Hess(Np/p) at x
  SpMat lagrangian_hessian(const Vec& x, double omega) const;

  void mask(Vec& g) const {
    if (restrict_q_) g[n_] = 0.0;
  }

  grid::DecomposedState state(const Vec& x) const;
  Vec from_state(const grid::DecomposedState& s) const;

 private:
  void add_quadratic(std::vector<Eigen::Triplet<double>>& t, double sigma) const;

  grid::GridPtr grid_;
  spectral::PhysParams params_;
  bool restrict_q_;
  specfun::SpecFunConfig cfg_;
  int n_;
  grid::GreenPtr green_;
  double theta_ = 0.0;
  SpMat kin_;  // kinetic matrix on the n free nodes
  std::unique_ptr<Eigen::SimplicialLDLT<SpMat>> pre_;
};

}  // namespace nlscd::detail
