#ifndef HAZMON_SAMPLE_HPP
#define HAZMON_SAMPLE_HPP

#include <cstddef>
#include <vector>

namespace hazmon {

// How to handle exact ties when building a sample.
enum class TieBreak {
  error,    // reject tied values
  perturb,  // break ties by adding i * eps, eps = 1e-9 * max|value|
};

// Sorted sample of strictly positive, finite observations, n >= 2.  After
// construction the values are strictly increasing; with TieBreak::perturb the
// number of adjusted values is recorded.
class Sample {
 public:
  static Sample from_data(std::vector<double> values,
                          TieBreak policy = TieBreak::error);

  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double min() const { return values_.front(); }
  double max() const { return values_.back(); }
  int tie_adjustments() const { return tie_adjustments_; }

  // Order statistic x_(ceil(q*n)) for q in (0,1).
  double empirical_quantile(double q) const;

 private:
  Sample(std::vector<double> values, int tie_adjustments)
      : values_(std::move(values)), tie_adjustments_(tie_adjustments) {}
  std::vector<double> values_;
  int tie_adjustments_ = 0;
};

// Closed interval [lo, hi] with 0 <= lo < hi, both finite.
struct Interval {
  double lo;
  double hi;
};

void validate_interval(const Interval& iv);

}  // namespace hazmon

#endif
