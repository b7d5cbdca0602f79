#include "lookback/piecewise_linear.hpp"

#include <algorithm>

#include "lookback/errors.hpp"

namespace lookback {

PiecewiseLinear::PiecewiseLinear(std::vector<double> x, std::vector<double> v,
                                 std::vector<double> slope)
    : x_(std::move(x)), v_(std::move(v)), slope_(std::move(slope)) {
  if (x_.empty() || x_.size() != v_.size() || slope_.size() != x_.size())
    throw DomainError("PiecewiseLinear: inconsistent knot arrays");
  for (std::size_t i = 1; i < x_.size(); ++i)
    if (x_[i] <= x_[i - 1])
      throw DomainError("PiecewiseLinear: knots not strictly increasing");
}

PiecewiseLinear PiecewiseLinear::from_values(std::vector<double> x,
                                             std::vector<double> v,
                                             double terminal_slope) {
  std::vector<double> slope(x.size(), terminal_slope);
  for (std::size_t i = 0; i + 1 < x.size(); ++i)
    slope[i] = (v[i + 1] - v[i]) / (x[i + 1] - x[i]);
  return PiecewiseLinear(std::move(x), std::move(v), std::move(slope));
}

std::size_t PiecewiseLinear::segment_of(double t) const {
  // last knot <= t; t below the domain extrapolates the first segment
  auto it = std::upper_bound(x_.begin(), x_.end(), t);
  if (it == x_.begin()) return 0;
  return static_cast<std::size_t>(it - x_.begin()) - 1;
}

double PiecewiseLinear::value(double t) const {
  std::size_t i = segment_of(t);
  return v_[i] + slope_[i] * (t - x_[i]);
}

double PiecewiseLinear::right_slope(double t) const {
  return slope_[segment_of(t)];
}

}  // namespace lookback
