#ifndef HAZMON_STATISTICS_HPP
#define HAZMON_STATISTICS_HPP

#include "hazmon/sample.hpp"

namespace hazmon {

// Which scalar discrepancy to compute from a sample and an interval.
struct StatisticSpec {
  enum class Kind { integral, sup };
  Kind kind = Kind::integral;
  double p = 1.0;  // power for the integral statistic; may be +infinity
};

// Integral-type projection statistic on [lo, hi]:
//   (1/n) * sum over order statistics x_i in the interval of
//          (F_n(x_i-) - Fhat_n(x_i))^p ,
// where Fhat_n = 1 - exp(-Hhat_n) and Hhat_n is the restricted isotonized
// cumulative hazard.  p = +infinity gives the maximum of the summand
// instead.  Always nonnegative; zero when the cumulative-hazard diagram is
// already convex.
double t_n(const Sample& sample, const Interval& iv, double p = 1.0);

// Supremum statistic sup_{x in [0, hi_eff]} (H_n(x) - Hhat_n(x)) built on
// the Nelson-Aalen cumulative hazard and its restricted isotonization (the
// left limit of H_n is used at hi_eff, so the gap closes there).  Requires
// iv.lo == 0.
double durot_stat(const Sample& sample, const Interval& iv);

}  // namespace hazmon

#endif
