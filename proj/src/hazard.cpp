#include "hazmon/hazard.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "hazmon/errors.hpp"

namespace hazmon {

StepFn ecdf(const Sample& sample) {
  const std::vector<double>& x = sample.values();
  const double n = static_cast<double>(x.size());
  std::vector<double> after(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    after[i] = static_cast<double>(i + 1) / n;
  return StepFn(x, std::move(after), 0.0);
}

StepFn empirical_cumhaz(const Sample& sample) {
  const std::vector<double>& x = sample.values();
  const double n = static_cast<double>(x.size());
  std::vector<double> after(x.size());
  for (std::size_t i = 0; i + 1 < x.size(); ++i)
    after[i] = -std::log1p(-static_cast<double>(i + 1) / n);
  after[x.size() - 1] = std::numeric_limits<double>::infinity();
  return StepFn(x, std::move(after), 0.0);
}

StepFn nelson_aalen_cumhaz(const Sample& sample) {
  const std::vector<double>& x = sample.values();
  const std::size_t n = x.size();
  std::vector<double> after(n);
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += 1.0 / static_cast<double>(n - i);
    after[i] = acc;
  }
  return StepFn(x, std::move(after), 0.0);
}

namespace {

// Restricted GCM of an arbitrary cumulative-hazard step function: hull of
// the left-limit diagram over [lo, hi_eff] with anchors at both endpoints.
RestrictedGcm restricted_gcm_of(const Sample& sample, const Interval& iv,
                                const StepFn& cumhaz) {
  validate_interval(iv);
  const std::vector<double>& x = sample.values();
  const double hi_eff = std::min(iv.hi, x.back());
  if (!(iv.lo < hi_eff))
    throw degenerate_interval_error(
        "interval collapses after truncation at the largest observation");

  std::vector<Point> pts;
  pts.reserve(x.size() + 2);
  pts.push_back({iv.lo, cumhaz.left_limit(iv.lo)});
  std::size_t inside = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < iv.lo || x[i] > hi_eff) continue;
    ++inside;
    if (x[i] == iv.lo) continue;  // coincides with the left anchor
    pts.push_back({x[i], cumhaz.left_limit(x[i])});
  }
  if (inside == 0)
    throw degenerate_interval_error("no observations inside the interval");
  if (pts.back().x < hi_eff) pts.push_back({hi_eff, cumhaz.left_limit(hi_eff)});

  return RestrictedGcm{gcm(CusumDiagram(std::move(pts))), hi_eff};
}

}  // namespace

RestrictedGcm restricted_gcm_cumhaz(const Sample& sample, const Interval& iv) {
  return restricted_gcm_of(sample, iv, empirical_cumhaz(sample));
}

RestrictedGcm restricted_gcm_nelson_aalen(const Sample& sample,
                                          const Interval& iv) {
  return restricted_gcm_of(sample, iv, nelson_aalen_cumhaz(sample));
}

double fhat_from_cumhaz(const PiecewiseLinearFn& cumhaz, double x) {
  return -std::expm1(-cumhaz(x));
}

IsotonicHazardFit penalized_isotonic_hazard(const Sample& sample, double hi,
                                            double penalty) {
  const std::vector<double>& x = sample.values();
  if (penalty < 0.0) penalty = default_penalty(sample.size());
  if (!std::isfinite(hi) || !(hi > 0.0))
    throw std::invalid_argument("interval endpoint must be positive");
  const double hi_eff = std::min(hi, x.back());
  if (!(hi_eff > x.front()))
    throw degenerate_interval_error(
        "interval must extend beyond the smallest observation");

  const StepFn cumhaz = empirical_cumhaz(sample);
  std::vector<Point> pts;
  pts.reserve(x.size() + 2);
  pts.push_back({0.0, 0.0});
  for (std::size_t i = 0; i < x.size() && x[i] < hi_eff; ++i)
    pts.push_back({x[i], cumhaz.left_limit(x[i]) + penalty});
  pts.push_back({hi_eff, cumhaz.left_limit(hi_eff)});

  const std::vector<SlopeSegment> segs =
      gcm_slopes_as_isotonic(CusumDiagram(std::move(pts)));
  IsotonicHazardFit fit;
  fit.hi_eff = hi_eff;
  fit.penalty = penalty;
  fit.breakpoints.reserve(segs.size() + 1);
  fit.levels.reserve(segs.size());
  fit.breakpoints.push_back(segs.front().x_lo);
  for (const SlopeSegment& s : segs) {
    fit.breakpoints.push_back(s.x_hi);
    fit.levels.push_back(s.slope);
  }
  // A strictly positive penalty forces a strictly positive first level;
  // penalty 0 legitimately allows a flat start.
  if (penalty > 0.0 && !(fit.levels.front() > 0.0))
    throw degenerate_fit_error("penalized fit lost its positive first level");
  return fit;
}

double default_penalty(std::size_t n) {
  return 2.0 * std::pow(static_cast<double>(n), -2.0 / 3.0);
}

}  // namespace hazmon
