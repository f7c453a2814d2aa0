#include "hazmon/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>

#include "hazmon/errors.hpp"
#include "hazmon/hazard.hpp"
#include "hazmon/rng.hpp"
#include "parallel.hpp"
#include "quadrature.hpp"

namespace hazmon {

namespace {

const double kNaN = std::numeric_limits<double>::quiet_NaN();

void validate_config(const BootstrapConfig& cfg) {
  if (cfg.bootstrap_b < 1)
    throw std::invalid_argument("bootstrap iteration count must be >= 1");
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0))
    throw std::invalid_argument("alpha must lie in (0, 1)");
  if (std::isnan(cfg.p) || cfg.p < 1.0)
    throw std::invalid_argument("statistic power p must be >= 1");
}

// Bootstrap iterations are addressed by a dedicated counter plane per
// method, disjoint from plane 0 which the study harness uses for datasets.
std::uint32_t stream_plane(Method m, std::uint32_t iteration) {
  const std::uint32_t base = static_cast<std::uint32_t>(m) + 1;
  return (base << 26) + iteration;
}

// Empirical (1 - alpha)-quantile (order statistic ceil((1-alpha)*B)) plus
// the tail p-value of the observed statistic.
void summarize(double statistic, TestOutcome& out) {
  std::vector<double> sorted = out.bootstrap_values;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t b = sorted.size();
  std::size_t k = static_cast<std::size_t>(
      std::ceil((1.0 - out.alpha) * static_cast<double>(b)));
  k = std::min(std::max<std::size_t>(k, 1), b);
  out.critical_value = sorted[k - 1];
  const std::size_t above = static_cast<std::size_t>(
      sorted.end() - std::lower_bound(sorted.begin(), sorted.end(), statistic));
  out.p_value =
      (1.0 + static_cast<double>(above)) / (static_cast<double>(b) + 1.0);
  out.statistic = statistic;
  out.reject = statistic > out.critical_value;
}

TestOutcome base_outcome(Method m, const Sample& sample, double hi,
                         const BootstrapConfig& cfg) {
  TestOutcome out;
  out.method = m;
  out.statistic = 0.0;
  out.bootstrap_values.assign(static_cast<std::size_t>(cfg.bootstrap_b), 0.0);
  out.critical_value = 0.0;
  out.p_value = 1.0;
  out.reject = false;
  out.interval_hi = hi;
  out.n = sample.size();
  out.p = cfg.p;
  out.alpha = cfg.alpha;
  out.bandwidth_used = kNaN;
  out.penalty_used = kNaN;
  out.seed = cfg.seed;
  out.tie_adjustments = sample.tie_adjustments();
  return out;
}

// Draws n sorted standard exponentials from the given stream.
std::vector<double> sorted_exponentials(std::size_t n, std::uint64_t seed,
                                        const StreamCoords& coords,
                                        std::uint32_t plane) {
  RngStream rng(seed, coords.gridpoint, coords.replicate, plane);
  std::vector<double> e(n);
  for (double& v : e) v = rng.next_exponential();
  std::sort(e.begin(), e.end());
  return e;
}

}  // namespace

const char* method_name(Method m) {
  switch (m) {
    case Method::tn_smoothed: return "tn_smoothed";
    case Method::tn_naive: return "tn_naive";
    case Method::durot_sup: return "durot_sup";
    case Method::durot_tn: return "durot_tn";
  }
  throw std::invalid_argument("unknown method");
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("HAZMON_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

TestOutcome smoothed_isotonic_bootstrap_test(const Sample& sample, double hi,
                                             const BootstrapConfig& cfg,
                                             const StreamCoords& coords) {
  validate_config(cfg);
  const Interval iv{0.0, hi};
  validate_interval(iv);
  const std::size_t n = sample.size();

  TestOutcome out = base_outcome(Method::tn_smoothed, sample, hi, cfg);
  const double statistic = t_n(sample, iv, cfg.p);

  const double penalty =
      cfg.penalty < 0.0 ? default_penalty(n) : cfg.penalty;
  const double bandwidth =
      cfg.bandwidth <= 0.0 ? default_bandwidth(n) : cfg.bandwidth;
  out.penalty_used = penalty;
  out.bandwidth_used = bandwidth;
  out.bandwidth_check = validate_bandwidth(n, bandwidth);

  const IsotonicHazardFit fit = penalized_isotonic_hazard(sample, hi, penalty);
  const SmoothHazard smooth = smooth_hazard(fit, bandwidth,
                                            cfg.reflect_boundary);

  const int threads = resolve_threads(cfg.threads);
  detail::parallel_for(
      static_cast<std::size_t>(cfg.bootstrap_b), threads, [&](std::size_t i) {
        const std::uint32_t plane = stream_plane(
            Method::tn_smoothed, static_cast<std::uint32_t>(i));
        std::vector<double> draws =
            sorted_exponentials(n, cfg.seed, coords, plane);
        double prev = 0.0;
        for (double& e : draws) {
          prev = smooth.inverse_cumhaz(e, prev);
          e = prev;
        }
        const Sample boot = Sample::from_data(std::move(draws),
                                              TieBreak::perturb);
        out.bootstrap_values[i] = t_n(boot, iv, cfg.p);
      });

  summarize(statistic, out);
  return out;
}

TestOutcome naive_isotonic_bootstrap_test(const Sample& sample, double hi,
                                          const BootstrapConfig& cfg,
                                          const StreamCoords& coords) {
  validate_config(cfg);
  const Interval iv{0.0, hi};
  validate_interval(iv);
  const std::size_t n = sample.size();

  TestOutcome out = base_outcome(Method::tn_naive, sample, hi, cfg);
  const double statistic = t_n(sample, iv, cfg.p);
  out.penalty_used = 0.0;

  const RestrictedGcm fit = restricted_gcm_cumhaz(sample, iv);
  const PiecewiseLinearFn& chaz = fit.cumhaz;
  const double top = chaz(chaz.xmax());

  // Extend the fit past hi_eff with its last strictly positive slope so
  // that every exponential draw has a preimage.  The fit is convex, so its
  // slopes are nondecreasing and the last segment carries the largest one;
  // if even that is zero the whole fit is flat and resampling is impossible.
  const double tail_slope = chaz.left_derivative(chaz.xmax());
  if (!(tail_slope > 0.0))
    throw degenerate_fit_error(
        "isotonized cumulative hazard is flat; cannot resample");

  const int threads = resolve_threads(cfg.threads);
  detail::parallel_for(
      static_cast<std::size_t>(cfg.bootstrap_b), threads, [&](std::size_t i) {
        const std::uint32_t plane =
            stream_plane(Method::tn_naive, static_cast<std::uint32_t>(i));
        std::vector<double> draws =
            sorted_exponentials(n, cfg.seed, coords, plane);
        for (double& e : draws) {
          e = (e <= top) ? chaz.inverse_lower(e)
                         : chaz.xmax() + (e - top) / tail_slope;
        }
        const Sample boot = Sample::from_data(std::move(draws),
                                              TieBreak::perturb);
        out.bootstrap_values[i] = t_n(boot, iv, cfg.p);
      });

  summarize(statistic, out);
  return out;
}

TestOutcome durot_calibrated_test(const Sample& sample, double hi,
                                  const BootstrapConfig& cfg,
                                  const StatisticSpec& spec,
                                  const StreamCoords& coords) {
  validate_config(cfg);
  const Interval iv{0.0, hi};
  validate_interval(iv);
  const std::size_t n = sample.size();
  const Method m = spec.kind == StatisticSpec::Kind::sup ? Method::durot_sup
                                                         : Method::durot_tn;

  TestOutcome out = base_outcome(m, sample, hi, cfg);
  const double statistic = spec.kind == StatisticSpec::Kind::sup
                               ? durot_stat(sample, iv)
                               : t_n(sample, iv, cfg.p);

  // Calibration interval [0, H_n(hi)] from the Nelson-Aalen estimator of
  // the original sample; finite even past the largest observation.
  const StepFn chaz = nelson_aalen_cumhaz(sample);
  const Interval calib{0.0, chaz(hi)};
  validate_interval(calib);

  const int threads = resolve_threads(cfg.threads);
  detail::parallel_for(
      static_cast<std::size_t>(cfg.bootstrap_b), threads, [&](std::size_t i) {
        const std::uint32_t plane =
            stream_plane(m, static_cast<std::uint32_t>(i));
        std::vector<double> draws =
            sorted_exponentials(n, cfg.seed, coords, plane);
        const Sample boot = Sample::from_data(std::move(draws),
                                              TieBreak::perturb);
        out.bootstrap_values[i] = spec.kind == StatisticSpec::Kind::sup
                                      ? durot_stat(boot, calib)
                                      : t_n(boot, calib, cfg.p);
      });

  summarize(statistic, out);
  return out;
}

TestOutcome run_test(const Sample& sample, double hi, Method method,
                     const BootstrapConfig& cfg, const StreamCoords& coords) {
  switch (method) {
    case Method::tn_smoothed:
      return smoothed_isotonic_bootstrap_test(sample, hi, cfg, coords);
    case Method::tn_naive:
      return naive_isotonic_bootstrap_test(sample, hi, cfg, coords);
    case Method::durot_sup:
      return durot_calibrated_test(
          sample, hi, cfg, StatisticSpec{StatisticSpec::Kind::sup, cfg.p},
          coords);
    case Method::durot_tn:
      return durot_calibrated_test(
          sample, hi, cfg, StatisticSpec{StatisticSpec::Kind::integral, cfg.p},
          coords);
  }
  throw std::invalid_argument("unknown method");
}

PluginFactors plugin_asymptotic_factors(const SmoothHazard& smooth,
                                        const Interval& iv) {
  validate_interval(iv);
  // The integrands blow up wherever the smoothed hazard has zero slope;
  // scan first so the divergence is reported instead of a huge number.
  const int scan = 512;
  for (int i = 0; i <= scan; ++i) {
    const double x = iv.lo + (iv.hi - iv.lo) * i / scan;
    if (!(smooth.hazard_deriv(x) > 0.0))
      return {std::numeric_limits<double>::infinity(),
              std::numeric_limits<double>::infinity(), false};
  }
  const auto density = [&](double x) {
    return smooth.hazard(x) * std::exp(-smooth.cumhaz(x));
  };
  const auto scale = [&](double x) {
    return 2.0 * smooth.hazard(x) * density(x) / smooth.hazard_deriv(x);
  };
  const double mu = detail::adaptive_simpson(
      [&](double x) { return std::cbrt(scale(x)) * density(x); }, iv.lo, iv.hi,
      1e-9);
  const double sigma = detail::adaptive_simpson(
      [&](double x) {
        const double c = std::cbrt(scale(x));
        return c * c * c * c * density(x);
      },
      iv.lo, iv.hi, 1e-9);
  return {mu, sigma, std::isfinite(mu) && std::isfinite(sigma)};
}

}  // namespace hazmon
