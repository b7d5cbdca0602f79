#pragma once

#include <functional>
#include <vector>

#include "lookback/piecewise_linear.hpp"

namespace lookback {

struct EnvelopeResult {
  PiecewiseLinear envelope;  // knots = input grid, flat beyond the last knot
  /// Slope of the last upper-hull segment before any flattening; the pricing
  /// solver extends the majorant linearly with it.
  double last_hull_slope = 0.0;
  /// Set when f(x)/x shows no sign of vanishing along the grid tail, in which
  /// case no concave increasing majorant bounded on [a, inf) can dominate a
  /// continuation of f.
  bool growth_flag = false;
};

/// Pointwise-smallest concave increasing function dominating the tabulated
/// values on the grid: the upper convex hull of the points with its slopes
/// clipped at zero (rising part kept, falling part flattened at the peak),
/// extended flat past the grid.
EnvelopeResult concave_increasing_envelope(const std::vector<double>& grid,
                                           const std::vector<double>& values);

EnvelopeResult concave_increasing_envelope(
    const std::function<double(double)>& f, const std::vector<double>& grid);

}  // namespace lookback
