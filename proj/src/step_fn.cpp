#include "hazmon/step_fn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hazmon {

StepFn::StepFn(std::vector<double> jump_at, std::vector<double> value_after,
               double initial)
    : jump_at_(std::move(jump_at)),
      value_after_(std::move(value_after)),
      initial_(initial) {
  if (jump_at_.size() != value_after_.size())
    throw std::invalid_argument("step function: jumps/values length mismatch");
  if (jump_at_.empty())
    throw std::invalid_argument("step function needs at least one jump");
  if (!std::isfinite(initial_))
    throw std::invalid_argument("step function: non-finite initial value");
  double prev = initial_;
  for (std::size_t i = 0; i < jump_at_.size(); ++i) {
    if (!std::isfinite(jump_at_[i]))
      throw std::invalid_argument("step function: non-finite jump location");
    if (i > 0 && !(jump_at_[i - 1] < jump_at_[i]))
      throw std::invalid_argument("step function: jumps must strictly increase");
    if (std::isnan(value_after_[i]) || value_after_[i] < prev)
      throw std::invalid_argument("step function: values must be nondecreasing");
    prev = value_after_[i];
  }
}

double StepFn::operator()(double x) const {
  auto it = std::upper_bound(jump_at_.begin(), jump_at_.end(), x);
  if (it == jump_at_.begin()) return initial_;
  return value_after_[static_cast<std::size_t>(it - jump_at_.begin()) - 1];
}

double StepFn::left_limit(double x) const {
  auto it = std::lower_bound(jump_at_.begin(), jump_at_.end(), x);
  if (it == jump_at_.begin()) return initial_;
  return value_after_[static_cast<std::size_t>(it - jump_at_.begin()) - 1];
}

}  // namespace hazmon
