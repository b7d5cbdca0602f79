#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "lookback/piecewise_linear.hpp"
#include "lookback/step_function.hpp"

namespace lookback {

/// Candidate spine: a function F on [1, inf) meant to be increasing, concave,
/// with F(1) = 1 and right slope at 1 <= 1. The representation is either
/// piecewise linear (exact algebra, the canonical numeric form) or a pair of
/// analytic evaluators (closed-form families). Construction does not enforce
/// validity; validate_spine() reports violations.
class Spine {
 public:
  explicit Spine(PiecewiseLinear pwl);
  Spine(std::function<double(double)> value, std::function<double(double)> slope,
        double terminal_slope);

  double value(double x) const;
  /// Right derivative; at piecewise-linear knots, the slope of the segment to
  /// the right; at and beyond the last knot, the terminal slope.
  double right_slope(double x) const;
  double terminal_slope() const;

  bool is_piecewise_linear() const { return pwl_.has_value(); }
  const PiecewiseLinear& pwl() const;

 private:
  std::optional<PiecewiseLinear> pwl_;
  std::function<double(double)> value_fn_;
  std::function<double(double)> slope_fn_;
  double terminal_slope_ = 0.0;
};

/// Scaled-down admissible simple adjuster view: increasing right-continuous
/// F on [1, inf) with integral of F(y)/y^2 at most 1. Step representation for
/// discrete measures, analytic for closed-form families. `breakpoints` lists
/// jump/kink locations as quadrature hints; `known_integral` carries the
/// exact value of the defining integral when the family provides one;
/// `tail_integral` evaluates the analytic remainder integral of F(y)/y^2 over
/// [y0, inf), which quadrature needs because heavy adjuster tails extend far
/// past double range.
class ScaledAsla {
 public:
  explicit ScaledAsla(StepFunction step);
  ScaledAsla(std::function<double(double)> f, std::vector<double> breakpoints,
             std::optional<double> known_integral,
             std::function<double(double)> tail_integral = {});

  double operator()(double y) const;

  bool is_step() const { return step_.has_value(); }
  const StepFunction& step() const;
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  std::optional<double> known_integral() const { return known_integral_; }
  const std::function<double(double)>& tail_integral() const {
    return tail_integral_;
  }

  /// Plain-callable view for quadrature and tabulation.
  std::function<double(double)> as_function() const;

 private:
  std::optional<StepFunction> step_;
  std::function<double(double)> fn_;
  std::vector<double> breakpoints_;
  std::optional<double> known_integral_;
  std::function<double(double)> tail_integral_;
};

/// Two-argument adjuster F(x_star, x) on {x_star >= 1, 0 <= x <= x_star},
/// affine in x with slope equal to the spine's right derivative. Built either
/// from a spine (tangent form) or directly from a discrete measure (partial
/// first moment plus tail-weighted x); the two constructions must agree, which
/// the square-commutation tests check.
class Ala {
 public:
  explicit Ala(Spine spine);
  /// Direct measure form; keeps a handle for spine recovery.
  Ala(std::function<double(double, double)> eval, std::function<Spine()> spine);

  /// Evaluate at (x_star, x); throws DomainError outside the domain.
  double operator()(double x_star, double x) const;

  /// The diagonal F(x_star, x_star) as a spine.
  Spine spine() const;

 private:
  std::optional<Spine> spine_;
  std::function<double(double, double)> eval_;
  std::function<Spine()> spine_fn_;
};

}  // namespace lookback
