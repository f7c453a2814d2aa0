#include "hazmon/sample.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hazmon {

Sample Sample::from_data(std::vector<double> values, TieBreak policy) {
  if (values.size() < 2)
    throw std::invalid_argument("sample needs at least two observations");
  for (double v : values) {
    if (!std::isfinite(v))
      throw std::invalid_argument("sample contains a non-finite value");
    if (v <= 0.0)
      throw std::invalid_argument("sample values must be strictly positive");
  }
  std::sort(values.begin(), values.end());

  int adjusted = 0;
  bool tied = false;
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] == values[i - 1]) tied = true;
  if (tied) {
    if (policy == TieBreak::error)
      throw std::invalid_argument("sample contains tied values");
    const double eps = 1e-9 * values.back();
    // Within each tied run, shift the k-th duplicate by k*eps.
    std::size_t run = 0;
    for (std::size_t i = 1; i < values.size(); ++i) {
      if (values[i] == values[i - run - 1]) {
        ++run;
        values[i] += static_cast<double>(run) * eps;
        ++adjusted;
      } else {
        run = 0;
      }
    }
    std::sort(values.begin(), values.end());
    for (std::size_t i = 1; i < values.size(); ++i)
      if (values[i] == values[i - 1])
        throw std::invalid_argument(
            "sample ties could not be separated at working precision");
  }
  return Sample(std::move(values), adjusted);
}

double Sample::empirical_quantile(double q) const {
  if (!(q > 0.0 && q < 1.0))
    throw std::invalid_argument("quantile level must lie in (0,1)");
  const double nq = q * static_cast<double>(values_.size());
  std::size_t k = static_cast<std::size_t>(std::ceil(nq));
  if (k == 0) k = 1;
  if (k > values_.size()) k = values_.size();
  return values_[k - 1];
}

void validate_interval(const Interval& iv) {
  if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi))
    throw std::invalid_argument("interval endpoints must be finite");
  if (!(iv.lo >= 0.0) || !(iv.lo < iv.hi))
    throw std::invalid_argument("interval must satisfy 0 <= lo < hi");
}

}  // namespace hazmon
