#ifndef HAZMON_STEP_FN_HPP
#define HAZMON_STEP_FN_HPP

#include <vector>

namespace hazmon {

// Right-continuous nondecreasing step function.  jump_at[i] are the strictly
// increasing jump locations; value_after[i] is the function value on
// [jump_at[i], jump_at[i+1]).  Before the first jump the value is `initial`.
// The last value may be +infinity (used for the empirical cumulative hazard
// at and beyond the largest observation).
class StepFn {
 public:
  StepFn(std::vector<double> jump_at, std::vector<double> value_after,
         double initial);

  double operator()(double x) const;  // right-continuous value at x
  double left_limit(double x) const;  // sup of values strictly left of x

  const std::vector<double>& jumps() const { return jump_at_; }
  const std::vector<double>& values() const { return value_after_; }
  double initial() const { return initial_; }

 private:
  std::vector<double> jump_at_;
  std::vector<double> value_after_;
  double initial_;
};

}  // namespace hazmon

#endif
