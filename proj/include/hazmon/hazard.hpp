#ifndef HAZMON_HAZARD_HPP
#define HAZMON_HAZARD_HPP

#include "hazmon/geometry.hpp"
#include "hazmon/sample.hpp"
#include "hazmon/step_fn.hpp"

namespace hazmon {

// Empirical distribution function of the sample (jumps of size 1/n).
StepFn ecdf(const Sample& sample);

// Empirical cumulative hazard -log(1 - F_n(x)).  The value at and beyond the
// largest observation is +infinity; its left limit there is log(n).
StepFn empirical_cumhaz(const Sample& sample);

// Nelson-Aalen cumulative hazard: jumps of 1/(number at risk) at each
// observation, so the value after x_(i) is sum_{j<=i} 1/(n-j+1).  Finite
// everywhere; the total mass is the nth harmonic number.
StepFn nelson_aalen_cumhaz(const Sample& sample);

// Isotonized cumulative hazard restricted to [lo, hi], together with the
// effective right endpoint hi_eff = min(hi, x_(n)).  The function is the GCM
// of the diagram made of (lo, H_n(lo-)), the points (x_(i), H_n(x_(i)-)) for
// order statistics inside the interval, and (hi_eff, H_n(hi_eff-)).
// Observations equal to lo count as interior.  Requires at least one order
// statistic in the interval.
struct RestrictedGcm {
  PiecewiseLinearFn cumhaz;
  double hi_eff;
};

RestrictedGcm restricted_gcm_cumhaz(const Sample& sample, const Interval& iv);

// Same construction on the Nelson-Aalen estimator instead of -log(1 - F_n);
// used by the exponential-calibrated supremum test.
RestrictedGcm restricted_gcm_nelson_aalen(const Sample& sample,
                                          const Interval& iv);

// Distribution function 1 - exp(-H(x)) for a cumulative hazard H.
double fhat_from_cumhaz(const PiecewiseLinearFn& cumhaz, double x);

// Nondecreasing step hazard on [0, hi_eff]: levels[j] on
// [breakpoints[j], breakpoints[j+1]), with breakpoints.front() == 0 and
// breakpoints.back() == hi_eff.  A positive penalty forces the first level
// to be strictly positive; with penalty 0 it may vanish.
struct IsotonicHazardFit {
  std::vector<double> breakpoints;
  std::vector<double> levels;
  double hi_eff;
  double penalty;
};

// Penalized isotonic hazard estimate on [0, hi]: the left-derivative step
// function of the GCM of the diagram (0,0), (x_(i), H_n(x_(i)-) + penalty)
// for x_(i) < hi_eff, (hi_eff, H_n(hi_eff-)).  penalty < 0 selects the
// default 2 * n^(-2/3).
IsotonicHazardFit penalized_isotonic_hazard(const Sample& sample, double hi,
                                            double penalty = -1.0);

double default_penalty(std::size_t n);  // 2 * n^(-2/3)

}  // namespace hazmon

#endif
