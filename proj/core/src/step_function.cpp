#include "lookback/step_function.hpp"

#include <algorithm>

#include "lookback/errors.hpp"

namespace lookback {

StepFunction::StepFunction(double initial, std::vector<double> jump_x,
                           std::vector<double> level)
    : initial_(initial), jump_x_(std::move(jump_x)), level_(std::move(level)) {
  if (jump_x_.size() != level_.size())
    throw DomainError("StepFunction: jump/level size mismatch");
  for (std::size_t i = 0; i < jump_x_.size(); ++i) {
    if (jump_x_[i] < 1.0)
      throw DomainError("StepFunction: jump location below 1");
    if (i > 0 && jump_x_[i] <= jump_x_[i - 1])
      throw DomainError("StepFunction: jump locations not strictly increasing");
  }
}

double StepFunction::operator()(double x) const {
  // first jump strictly greater than x, then step back one level
  auto it = std::upper_bound(jump_x_.begin(), jump_x_.end(), x);
  if (it == jump_x_.begin()) return initial_;
  return level_[static_cast<std::size_t>(it - jump_x_.begin()) - 1];
}

double StepFunction::terminal_level() const {
  return level_.empty() ? initial_ : level_.back();
}

}  // namespace lookback
