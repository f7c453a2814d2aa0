#include "hazmon/smoothing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hazmon/errors.hpp"

namespace hazmon {

double kernel(double u) {
  if (u <= -1.0 || u >= 1.0) return 0.0;
  const double w = 1.0 - u * u;
  return (35.0 / 32.0) * w * w * w;
}

double kernel_cdf(double u) {
  if (u <= -1.0) return 0.0;
  if (u >= 1.0) return 1.0;
  const double u2 = u * u;
  // Antiderivative of the triweight on [-1,1].
  return (35.0 / 32.0) *
         (u * (1.0 + u2 * (-1.0 + u2 * (3.0 / 5.0 - u2 / 7.0))) + 16.0 / 35.0);
}

double kernel_cdf_integral(double u) {
  if (u <= -1.0) return 0.0;
  if (u >= 1.0) return u;  // mean-zero kernel: the tail is exactly linear
  const double u2 = u * u;
  return (35.0 / 32.0) *
         (u2 * (0.5 + u2 * (-0.25 + u2 * (0.1 - u2 / 56.0))) +
          (16.0 / 35.0) * u + 0.125);
}

double default_bandwidth(std::size_t n) {
  return std::pow(static_cast<double>(n), -0.25);
}

BandwidthDiagnostic validate_bandwidth(std::size_t n, double bandwidth) {
  if (!(bandwidth > 0.0))
    throw std::invalid_argument("bandwidth must be strictly positive");
  const double nn = static_cast<double>(n);
  BandwidthDiagnostic d;
  d.ratio = nn * bandwidth * bandwidth * bandwidth / std::log(1.0 / bandwidth);
  d.too_small = bandwidth <= std::pow(nn, -1.0 / 3.0);
  return d;
}

SmoothHazard::SmoothHazard(const IsotonicHazardFit& fit, double bandwidth,
                           bool reflect)
    : bandwidth_(bandwidth), hi_eff_(fit.hi_eff), reflect_(reflect) {
  if (!(bandwidth > 0.0))
    throw std::invalid_argument("bandwidth must be strictly positive");
  if (fit.levels.empty() || fit.breakpoints.size() != fit.levels.size() + 1)
    throw std::invalid_argument("malformed isotonic fit");
  if (!(fit.levels.front() > 0.0))
    throw degenerate_fit_error(
        "smoothing needs a strictly positive first hazard level");

  // The step hazard as a measure: its value at 0+ sits at 0, each level
  // increase sits at the corresponding breakpoint.
  atom_at_.push_back(0.0);
  atom_mass_.push_back(fit.levels.front());
  for (std::size_t j = 1; j < fit.levels.size(); ++j) {
    const double jump = fit.levels[j] - fit.levels[j - 1];
    if (jump < 0.0)
      throw std::invalid_argument("isotonic fit levels must be nondecreasing");
    if (jump > 0.0) {
      atom_at_.push_back(fit.breakpoints[j]);
      atom_mass_.push_back(jump);
    }
  }

  // Once x clears an atom by a bandwidth, its cumulative-hazard contribution
  // is linear in x: one-sided m*(x-t) - m*b*J(-t/b), and additionally
  // m*b*J(t/b) - m*t from the mirror atom when reflecting.  Prefix sums make
  // evaluation O(log + window).
  prefix_mass_.resize(atom_at_.size() + 1, 0.0);
  prefix_mass_t_.resize(atom_at_.size() + 1, 0.0);
  prefix_tail_.resize(atom_at_.size() + 1, 0.0);
  for (std::size_t j = 0; j < atom_at_.size(); ++j) {
    const double t = atom_at_[j];
    const double m = atom_mass_[j];
    double tail = -m * bandwidth_ * kernel_cdf_integral(-t / bandwidth_);
    if (reflect_)
      tail += m * bandwidth_ * kernel_cdf_integral(t / bandwidth_) - m * t;
    prefix_mass_[j + 1] = prefix_mass_[j] + m;
    prefix_mass_t_[j + 1] = prefix_mass_t_[j] + m * t;
    prefix_tail_[j + 1] = prefix_tail_[j] + tail;
  }

  extension_level_ = hazard_raw(hi_eff_);
  if (!(extension_level_ > 0.0))
    throw degenerate_fit_error("smoothed hazard vanishes at the endpoint");
  cumhaz_at_hi_ = cumhaz(hi_eff_);
}

double SmoothHazard::hazard_raw(double x) const {
  // Atoms are sorted, so both the direct term (zero once t >= x + b) and the
  // reflected term (zero once t >= b - x, which is implied) vanish for every
  // atom past the break.
  double v = 0.0;
  for (std::size_t j = 0; j < atom_at_.size(); ++j) {
    const double u = (x - atom_at_[j]) / bandwidth_;
    if (u <= -1.0) break;
    v += atom_mass_[j] * kernel_cdf(u);
    if (reflect_)
      v += atom_mass_[j] * (1.0 - kernel_cdf((x + atom_at_[j]) / bandwidth_));
  }
  return v;
}

double SmoothHazard::hazard(double x) const {
  if (std::isnan(x) || x < 0.0)
    throw std::domain_error("smoothed hazard defined on [0, inf)");
  if (x >= hi_eff_) return extension_level_;
  return hazard_raw(x);
}

double SmoothHazard::hazard_deriv(double x) const {
  if (std::isnan(x) || x < 0.0)
    throw std::domain_error("smoothed hazard defined on [0, inf)");
  if (x > hi_eff_) return 0.0;
  double v = 0.0;
  for (std::size_t j = 0; j < atom_at_.size(); ++j) {
    const double u = (x - atom_at_[j]) / bandwidth_;
    if (u <= -1.0) break;
    v += atom_mass_[j] * kernel(u) / bandwidth_;
    if (reflect_)
      v -= atom_mass_[j] * kernel((x + atom_at_[j]) / bandwidth_) / bandwidth_;
  }
  return v;
}

double SmoothHazard::cumhaz(double x) const {
  if (std::isnan(x) || x < 0.0)
    throw std::domain_error("smoothed hazard defined on [0, inf)");
  double beyond = 0.0;
  if (x > hi_eff_) {
    beyond = extension_level_ * (x - hi_eff_);
    x = hi_eff_;
  }
  const std::vector<double>& t = atom_at_;
  const std::size_t k = static_cast<std::size_t>(
      std::upper_bound(t.begin(), t.end(), x - bandwidth_) - t.begin());
  double v = prefix_mass_[k] * x - prefix_mass_t_[k] + prefix_tail_[k];
  for (std::size_t j = k; j < t.size(); ++j) {
    const double u = (x - t[j]) / bandwidth_;
    if (u <= -1.0) break;
    v += atom_mass_[j] * bandwidth_ *
         (kernel_cdf_integral(u) - kernel_cdf_integral(-t[j] / bandwidth_));
    if (reflect_)
      v += atom_mass_[j] *
           (x - bandwidth_ * (kernel_cdf_integral((x + t[j]) / bandwidth_) -
                              kernel_cdf_integral(t[j] / bandwidth_)));
  }
  return v + beyond;
}

double SmoothHazard::inverse_cumhaz(double e, double lo_hint) const {
  if (std::isnan(e) || e < 0.0)
    throw std::domain_error("cumulative hazard inverse needs e >= 0");
  if (e >= cumhaz_at_hi_)
    return hi_eff_ + (e - cumhaz_at_hi_) / extension_level_;

  double lo = 0.0, hi = hi_eff_;
  if (lo_hint > 0.0 && lo_hint < hi_eff_ && cumhaz(lo_hint) <= e)
    lo = lo_hint;
  double x = (lo > 0.0) ? lo : 0.5 * (lo + hi);
  double fx = cumhaz(x) - e;
  if (fx >= 0.0) hi = x; else lo = x;

  // Newton safeguarded by the bracket, with a forced bisection whenever two
  // steps fail to halve the bracket, so convergence is guaranteed.
  double tracked_width = hi - lo;
  int steps_since_check = 0;
  while (hi - lo > 1e-12) {
    const double d = hazard(x);
    double next = (d > 0.0) ? x - fx / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (++steps_since_check >= 2) {
      if (hi - lo > 0.5 * tracked_width) next = 0.5 * (lo + hi);
      tracked_width = hi - lo;
      steps_since_check = 0;
    }
    x = next;
    fx = cumhaz(x) - e;
    if (fx >= 0.0) hi = x; else lo = x;
  }
  return 0.5 * (lo + hi);
}

SmoothHazard smooth_hazard(const IsotonicHazardFit& fit, double bandwidth,
                           bool reflect) {
  return SmoothHazard(fit, bandwidth, reflect);
}

}  // namespace hazmon
