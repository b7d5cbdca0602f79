#pragma once

#include <functional>
#include <string>
#include <vector>

#include "lookback/spine.hpp"

namespace lookback {

struct ValidationIssue {
  std::string condition;  // "increasing", "concave", "value_at_1", "slope_at_1",
                          // "linear_in_x", "slope_agreement", "nonnegative"
  double witness;         // x (or x_star) where the condition fails
  double detail;          // offending value (slope, gap, ...)
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool valid() const { return issues.empty(); }
};

/// Checks increasing, concave (decreasing right slopes), F(1) = 1 and right
/// slope at 1 <= 1. Piecewise-linear spines are checked exactly on their
/// knots; analytic spines on a default log-spaced grid.
ValidationReport validate_spine(const Spine& s, double tol = 1e-9);

/// Black-box variant sampled over the given grid (must start at 1).
ValidationReport validate_spine(const std::function<double(double)>& f,
                                const std::vector<double>& grid,
                                double tol = 1e-9);

/// Spine checks on the diagonal plus, per sampled x_star, linearity in x and
/// agreement of the x-slope with the diagonal's right derivative.
ValidationReport validate_ala(const Ala& a, double tol = 1e-9);
ValidationReport validate_ala(const std::function<double(double, double)>& f,
                              const std::vector<double>& grid,
                              double tol = 1e-9);

}  // namespace lookback
