#pragma once

#include <cstddef>
#include <vector>

namespace lookback {

/// Continuous piecewise-linear function on [x[0], inf).
///
/// Knots x are strictly increasing. Segment i covers [x[i], x[i+1]) with
/// slope `slope[i]`; the final entry of `slope` is the terminal slope used
/// on [x.back(), inf), so slope.size() == x.size(). Slopes are stored
/// explicitly rather than recomputed from values: when a spine is built from
/// a measure the slopes are exactly the measure's tail masses, and the
/// trading position must reproduce them bit for bit.
class PiecewiseLinear {
 public:
  PiecewiseLinear() = default;

  /// Knots + values + per-segment slopes (slope.size() == x.size(); the last
  /// one is the terminal slope). Values must be consistent with slopes;
  /// consistency is the caller's responsibility.
  PiecewiseLinear(std::vector<double> x, std::vector<double> v,
                  std::vector<double> slope);

  /// Build from knots and values alone; slopes are the chord slopes and the
  /// terminal slope is given separately.
  static PiecewiseLinear from_values(std::vector<double> x,
                                     std::vector<double> v,
                                     double terminal_slope);

  double value(double t) const;

  /// Right derivative; at a knot this is the slope of the segment to the
  /// right, beyond the last knot the terminal slope.
  double right_slope(double t) const;

  double terminal_slope() const { return slope_.back(); }
  double domain_start() const { return x_.front(); }

  const std::vector<double>& knots() const { return x_; }
  const std::vector<double>& values() const { return v_; }
  const std::vector<double>& slopes() const { return slope_; }
  std::size_t size() const { return x_.size(); }

  bool empty() const { return x_.empty(); }

 private:
  std::size_t segment_of(double t) const;

  std::vector<double> x_;
  std::vector<double> v_;
  std::vector<double> slope_;
};

}  // namespace lookback
