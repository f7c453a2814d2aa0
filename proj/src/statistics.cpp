#include "hazmon/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hazmon/hazard.hpp"

namespace hazmon {

double t_n(const Sample& sample, const Interval& iv, double p) {
  if (std::isnan(p) || p < 1.0)
    throw std::invalid_argument("statistic power must satisfy p >= 1");
  const RestrictedGcm fit = restricted_gcm_cumhaz(sample, iv);
  const StepFn dist = ecdf(sample);
  const std::vector<double>& x = sample.values();
  const bool max_form = std::isinf(p);

  double acc = 0.0;
  for (double xi : x) {
    if (xi < iv.lo || xi > fit.hi_eff) continue;
    // Each summand is nonnegative because the GCM lies below the left limits
    // of the cumulative hazard; clamp away rounding noise.
    const double term = std::max(
        0.0, dist.left_limit(xi) - fhat_from_cumhaz(fit.cumhaz, xi));
    if (max_form)
      acc = std::max(acc, term);
    else if (p == 1.0)
      acc += term;
    else
      acc += std::pow(term, p);
  }
  if (max_form) return acc;
  return acc / static_cast<double>(sample.size());
}

double durot_stat(const Sample& sample, const Interval& iv) {
  if (iv.lo != 0.0)
    throw std::invalid_argument("supremum statistic requires an interval at 0");
  const RestrictedGcm fit = restricted_gcm_nelson_aalen(sample, iv);
  const StepFn cumhaz = nelson_aalen_cumhaz(sample);
  const std::vector<double>& x = sample.values();

  // The difference increases only at jumps of the empirical cumulative
  // hazard and decreases in between, so candidates are the post-jump values
  // at order statistics strictly inside [0, hi_eff) plus the left limit at
  // hi_eff (where the GCM is anchored and the gap closes to 0).
  double best = std::max(0.0, cumhaz.left_limit(fit.hi_eff) -
                                  fit.cumhaz(fit.hi_eff));
  for (double xi : x) {
    if (xi >= fit.hi_eff) break;
    best = std::max(best, cumhaz(xi) - fit.cumhaz(xi));
  }
  return best;
}

}  // namespace hazmon
