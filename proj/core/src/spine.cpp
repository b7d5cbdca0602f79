#include "lookback/spine.hpp"

#include <algorithm>

#include "lookback/errors.hpp"

namespace lookback {

Spine::Spine(PiecewiseLinear pwl) : pwl_(std::move(pwl)) {}

Spine::Spine(std::function<double(double)> value,
             std::function<double(double)> slope, double terminal_slope)
    : value_fn_(std::move(value)),
      slope_fn_(std::move(slope)),
      terminal_slope_(terminal_slope) {}

double Spine::value(double x) const {
  return pwl_ ? pwl_->value(x) : value_fn_(x);
}

double Spine::right_slope(double x) const {
  return pwl_ ? pwl_->right_slope(x) : slope_fn_(x);
}

double Spine::terminal_slope() const {
  return pwl_ ? pwl_->terminal_slope() : terminal_slope_;
}

const PiecewiseLinear& Spine::pwl() const {
  if (!pwl_) throw DomainError("Spine: no piecewise-linear representation");
  return *pwl_;
}

ScaledAsla::ScaledAsla(StepFunction step) : step_(std::move(step)) {
  breakpoints_ = step_->jumps();
  // integral of a step F is sum of jump heights divided by jump locations
  double total = 0.0;
  double prev = step_->initial();
  for (std::size_t i = 0; i < step_->jump_count(); ++i) {
    total += (step_->levels()[i] - prev) / step_->jumps()[i];
    prev = step_->levels()[i];
  }
  total += step_->initial();  // initial level integrates to initial * 1
  known_integral_ = total;
  StepFunction s = *step_;
  tail_integral_ = [s](double y0) {
    double t = s.initial() / y0;
    double p = s.initial();
    for (std::size_t i = 0; i < s.jump_count(); ++i) {
      t += (s.levels()[i] - p) / std::max(s.jumps()[i], y0);
      p = s.levels()[i];
    }
    return t;
  };
}

ScaledAsla::ScaledAsla(std::function<double(double)> f,
                       std::vector<double> breakpoints,
                       std::optional<double> known_integral,
                       std::function<double(double)> tail_integral)
    : fn_(std::move(f)),
      breakpoints_(std::move(breakpoints)),
      known_integral_(known_integral),
      tail_integral_(std::move(tail_integral)) {}

double ScaledAsla::operator()(double y) const {
  return step_ ? (*step_)(y) : fn_(y);
}

const StepFunction& ScaledAsla::step() const {
  if (!step_) throw DomainError("ScaledAsla: no step representation");
  return *step_;
}

std::function<double(double)> ScaledAsla::as_function() const {
  if (step_) {
    StepFunction s = *step_;
    return [s](double y) { return s(y); };
  }
  return fn_;
}

Ala::Ala(Spine spine) : spine_(std::move(spine)) {}

Ala::Ala(std::function<double(double, double)> eval,
         std::function<Spine()> spine)
    : eval_(std::move(eval)), spine_fn_(std::move(spine)) {}

double Ala::operator()(double x_star, double x) const {
  if (!(x_star >= 1.0))
    throw DomainError("Ala: x_star must be >= 1");
  if (!(x >= 0.0) || x > x_star)
    throw DomainError("Ala: x must lie in [0, x_star]");
  if (spine_)
    return spine_->value(x_star) + spine_->right_slope(x_star) * (x - x_star);
  return eval_(x_star, x);
}

Spine Ala::spine() const { return spine_ ? *spine_ : spine_fn_(); }

}  // namespace lookback
