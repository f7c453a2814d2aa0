#ifndef HAZMON_BOOTSTRAP_HPP
#define HAZMON_BOOTSTRAP_HPP

#include <cstdint>
#include <vector>

#include "hazmon/sample.hpp"
#include "hazmon/smoothing.hpp"
#include "hazmon/statistics.hpp"

namespace hazmon {

inline constexpr std::uint64_t kDefaultSeed = 1234567891ULL;

enum class Method {
  tn_smoothed,  // integral statistic, smoothed-isotonic resampling
  tn_naive,     // integral statistic, unsmoothed isotonic resampling
  durot_sup,    // supremum statistic, exponential calibration
  durot_tn,     // integral statistic, exponential calibration
};

const char* method_name(Method m);

struct BootstrapConfig {
  int bootstrap_b = 2000;
  double alpha = 0.1;
  double bandwidth = -1.0;  // <= 0: default n^(-1/4)
  double penalty = -1.0;    // < 0: default 2 * n^(-2/3)
  double p = 1.0;           // power of the integral statistic
  std::uint64_t seed = kDefaultSeed;
  int threads = 0;  // 0: HAZMON_THREADS env var, else hardware
  bool reflect_boundary = false;
};

// Stream coordinates injected by the simulation harness so that every draw
// is addressed by (seed, grid point, replicate, bootstrap iteration).
struct StreamCoords {
  std::uint32_t gridpoint = 0;
  std::uint32_t replicate = 0;
};

struct TestOutcome {
  Method method;
  double statistic;
  std::vector<double> bootstrap_values;  // in iteration order
  double critical_value;  // empirical (1-alpha)-quantile of the values
  double p_value;         // (1 + #{T* >= T}) / (B + 1)
  bool reject;            // statistic > critical_value
  double interval_hi;
  std::size_t n;
  double p;
  double alpha;
  double bandwidth_used;  // NaN for the calibrated (durot) methods
  double penalty_used;    // NaN for the calibrated (durot) methods
  std::uint64_t seed;
  BandwidthDiagnostic bandwidth_check{0.0, false};
  int tie_adjustments = 0;
};

// Level-alpha test of locally nondecreasing hazard on [0, hi]: observed
// integral statistic compared against the (1-alpha)-quantile of B statistics
// recomputed on samples drawn from the smoothed penalized isotonic
// cumulative hazard (X*_i = Htilde^{-1}(E_i), E_i standard exponential).
TestOutcome smoothed_isotonic_bootstrap_test(const Sample& sample, double hi,
                                             const BootstrapConfig& cfg,
                                             const StreamCoords& coords = {});

// Same comparison but resampling by inversion of the unpenalized, unsmoothed
// isotonized cumulative hazard, extended linearly past its endpoint with the
// last strictly positive slope.
TestOutcome naive_isotonic_bootstrap_test(const Sample& sample, double hi,
                                          const BootstrapConfig& cfg,
                                          const StreamCoords& coords = {});

// Calibration against standard exponential samples: the statistic (sup or
// integral, per spec.kind) of each exponential sample is computed on
// [0, H_n(hi)], with H_n the Nelson-Aalen cumulative hazard of the original
// sample (finite everywhere, so no truncation is needed).
TestOutcome durot_calibrated_test(const Sample& sample, double hi,
                                  const BootstrapConfig& cfg,
                                  const StatisticSpec& spec,
                                  const StreamCoords& coords = {});

// Dispatch on method.
TestOutcome run_test(const Sample& sample, double hi, Method method,
                     const BootstrapConfig& cfg,
                     const StreamCoords& coords = {});

// Plug-in scale diagnostics for the smoothed fit on an interval:
//   mu_factor    = integral of (2 h f / h')^(1/3) * f
//   sigma_factor = integral of (2 h f / h')^(4/3) * f
// with f = h * exp(-H).  When h' vanishes on part of the interval the
// integrals diverge and the result is flagged non-finite.
struct PluginFactors {
  double mu_factor;
  double sigma_factor;
  bool finite;
};

PluginFactors plugin_asymptotic_factors(const SmoothHazard& smooth,
                                        const Interval& iv);

int resolve_threads(int requested);  // HAZMON_THREADS fallback

}  // namespace hazmon

#endif
