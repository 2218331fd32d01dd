#include "nlscd/grid.hpp"

#include <algorithm>
#include <numeric>

namespace nlscd::grid {

RadialFunction rearrange(const RadialFunction& f) {
  const int n = f.size();
  auto w = f.mesh().area_weights();
  auto v = f.values();
  for (double x : v)
    if (x < 0.0) throw std::domain_error("rearrange: input must be nonnegative");

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return v[a] > v[b]; });

  // cumulative measure of the sorted cells
  std::vector<double> cum(n + 1, 0.0);
  for (int k = 0; k < n; ++k) cum[k + 1] = cum[k] + w[order[k]];

  std::vector<double> out(n);
  double left = 0.0;
  int k = 0;
  for (int j = 0; j < n; ++j) {
    double mid = left + 0.5 * w[j];
    left += w[j];
    while (k < n - 1 && cum[k + 1] <= mid) ++k;
    out[j] = v[order[k]];
  }
  return RadialFunction(f.grid(), std::move(out), f.smoothness());
}

double level_set_measure(const RadialFunction& f, double t) {
  auto w = f.mesh().area_weights();
  double s = 0.0;
  for (int i = 0; i < f.size(); ++i)
    if (f[i] > t) s += w[i];
  return s;
}

}  // namespace nlscd::grid
