#pragma once

#include <cstddef>
#include <vector>

namespace lookback {

/// Right-continuous increasing step function on [1, inf).
///
/// Value is `initial` on [1, jump_x[0]), and `level[i]` on
/// [jump_x[i], jump_x[i+1]). Jump locations are strictly increasing and >= 1;
/// a jump at 1 simply overrides `initial` from the start.
class StepFunction {
 public:
  StepFunction() : initial_(0.0) {}
  StepFunction(double initial, std::vector<double> jump_x,
               std::vector<double> level);

  double operator()(double x) const;

  double initial() const { return initial_; }
  const std::vector<double>& jumps() const { return jump_x_; }
  const std::vector<double>& levels() const { return level_; }
  std::size_t jump_count() const { return jump_x_.size(); }

  /// Value of the final (rightmost) level; equals operator() at large x.
  double terminal_level() const;

 private:
  double initial_;
  std::vector<double> jump_x_;
  std::vector<double> level_;
};

}  // namespace lookback
