#include "lookback/envelope.hpp"

#include <cmath>

#include "lookback/errors.hpp"

namespace lookback {

EnvelopeResult concave_increasing_envelope(const std::vector<double>& grid,
                                           const std::vector<double>& values) {
  std::size_t n = grid.size();
  if (n == 0 || values.size() != n)
    throw DomainError("concave_increasing_envelope: grid/value size mismatch");
  for (std::size_t i = 1; i < n; ++i)
    if (grid[i] <= grid[i - 1])
      throw DomainError("concave_increasing_envelope: grid must increase");

  // upper hull, monotone-chain: keep indices whose turns are right turns
  std::vector<std::size_t> hull;
  for (std::size_t i = 0; i < n; ++i) {
    while (hull.size() >= 2) {
      std::size_t a = hull[hull.size() - 2], b = hull[hull.size() - 1];
      double cross = (grid[b] - grid[a]) * (values[i] - values[a]) -
                     (grid[i] - grid[a]) * (values[b] - values[a]);
      if (cross >= 0.0)
        hull.pop_back();  // b under or on chord a->i
      else
        break;
    }
    hull.push_back(i);
  }

  double last_hull_slope =
      hull.size() >= 2
          ? (values[hull[hull.size() - 1]] - values[hull[hull.size() - 2]]) /
                (grid[hull[hull.size() - 1]] - grid[hull[hull.size() - 2]])
          : 0.0;

  // walk hull segments left to right, clip slopes at zero; once a segment
  // falls the remainder is flat at the running level
  std::vector<double> env(n);
  double level = values[hull[0]];
  env[hull[0]] = level;
  std::size_t grid_pos = hull[0];
  for (std::size_t h = 0; h + 1 < hull.size(); ++h) {
    std::size_t a = hull[h], b = hull[h + 1];
    double slope = (values[b] - values[a]) / (grid[b] - grid[a]);
    if (slope < 0.0) slope = 0.0;
    for (std::size_t i = grid_pos + 1; i <= b; ++i)
      env[i] = level + slope * (grid[i] - grid[a]);
    level = env[b];
    grid_pos = b;
  }
  // leading grid points before the first hull vertex cannot occur (vertex 0
  // is always on the hull), trailing ones were filled above

  // growth flag: f(x)/x not vanishing across the tail of the grid
  bool growth = false;
  if (n >= 2) {
    double xr = grid[n - 1];
    double ratio_end = values[n - 1] / xr;
    if (ratio_end >= 1e-6) {
      // compare against the ratio one decade (or half the grid) earlier
      double x_ref = xr / 10.0;
      std::size_t j = n - 1;
      while (j > 0 && grid[j] > x_ref) --j;
      double ratio_ref = values[j] / grid[j];
      if (ratio_end >= ratio_ref * 0.9) growth = true;
    }
  }

  EnvelopeResult out;
  out.envelope = PiecewiseLinear::from_values(grid, std::move(env), 0.0);
  out.last_hull_slope = std::max(last_hull_slope, 0.0);
  out.growth_flag = growth;
  return out;
}

EnvelopeResult concave_increasing_envelope(
    const std::function<double(double)>& f, const std::vector<double>& grid) {
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) values[i] = f(grid[i]);
  return concave_increasing_envelope(grid, values);
}

}  // namespace lookback
