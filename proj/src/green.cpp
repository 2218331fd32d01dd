#include "nlscd/grid.hpp"
#include "nlscd/specfun.hpp"

#include <cmath>

namespace nlscd::specfun {

std::vector<double> green_table(const GreenParams& gp, const grid::RadialGrid& grid,
                                const SpecFunConfig& cfg) {
  gp.require_admissible();
  std::vector<double> g(grid.size());
  for (int i = 0; i < grid.size(); ++i) g[i] = green_value(gp, grid.r(i), cfg);
  return g;
}

GreenNorm green_norm(const GreenParams& gp, double s, const grid::RadialGrid& grid,
                     const SpecFunConfig& cfg) {
  if (!(s > 1.0)) throw std::domain_error("green_norm: need s > 1");
  auto g = green_table(gp, grid, cfg);
  for (double& x : g) x = std::pow(x, s);
  GreenNorm out;
  out.value = grid.integrate(g);
  out.error_estimate = std::fabs(out.value - grid.integrate_coarse(g));
  out.tail_fraction = grid.area_weights().back() * g.back() / out.value;
  out.tail_warning = out.tail_fraction > cfg.rel_tol;
  return out;
}

}  // namespace nlscd::specfun
