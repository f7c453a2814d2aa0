#ifndef HAZMON_SMOOTHING_HPP
#define HAZMON_SMOOTHING_HPP

#include <vector>

#include "hazmon/hazard.hpp"

namespace hazmon {

// Triweight kernel (35/32)(1-u^2)^3 on [-1,1], zero outside.
double kernel(double u);

// Integral of the kernel from -1 to u; 0 below -1, 1 above 1.
double kernel_cdf(double u);

// Integral of kernel_cdf from -1 to u; 0 below -1 and exactly u above 1
// (the kernel has mean zero, so the linear tail has no offset).
double kernel_cdf_integral(double u);

double default_bandwidth(std::size_t n);  // n^(-1/4)

struct BandwidthDiagnostic {
  double ratio;    // n * b^3 / log(1/b)
  bool too_small;  // b <= n^(-1/3)
};

BandwidthDiagnostic validate_bandwidth(std::size_t n, double bandwidth);

// Kernel-smoothed hazard built from a nondecreasing step hazard.  The step
// hazard is viewed as a measure: an atom at 0 carrying the first level plus
// an atom at each level change.  Then
//   hazard(x)  = sum_j mass_j * kernel_cdf((x - t_j)/b)
// on [0, hi_eff], extended by the constant hazard(hi_eff) to the right.  The
// cumulative hazard has a closed form through kernel_cdf_integral, is
// strictly increasing, and is unbounded, so inversion is always possible.
// With `reflect` the even reflection of the step hazard about 0 is smoothed
// instead, which removes the halving bias at 0.
class SmoothHazard {
 public:
  SmoothHazard(const IsotonicHazardFit& fit, double bandwidth,
               bool reflect = false);

  double hazard(double x) const;        // x >= 0
  double hazard_deriv(double x) const;  // derivative; 0 beyond hi_eff
  double cumhaz(double x) const;        // integral of hazard over [0, x]
  // Inverse of cumhaz to absolute tolerance 1e-12 in x; lo_hint (a point
  // known to satisfy cumhaz(lo_hint) <= e) warm-starts the search.
  double inverse_cumhaz(double e, double lo_hint = 0.0) const;

  double bandwidth() const { return bandwidth_; }
  double hi_eff() const { return hi_eff_; }
  double extension_level() const { return extension_level_; }
  const std::vector<double>& atom_at() const { return atom_at_; }
  const std::vector<double>& atom_mass() const { return atom_mass_; }

 private:
  double hazard_raw(double x) const;  // convolution value, no extension
  std::vector<double> atom_at_;
  std::vector<double> atom_mass_;
  // Per-atom constants so that for atoms fully left of x the cumulative
  // hazard contribution is mass*(x - t) + tail_const; prefix sums make the
  // evaluation O(window) instead of O(atoms).
  std::vector<double> prefix_mass_;
  std::vector<double> prefix_mass_t_;
  std::vector<double> prefix_tail_;
  double bandwidth_;
  double hi_eff_;
  double extension_level_;
  double cumhaz_at_hi_;
  bool reflect_;
};

// Smoothing entry point; bandwidth must be strictly positive (callers that
// know n resolve defaults through default_bandwidth).
SmoothHazard smooth_hazard(const IsotonicHazardFit& fit, double bandwidth,
                           bool reflect = false);

}  // namespace hazmon

#endif
