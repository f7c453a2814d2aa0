#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "hazmon/errors.hpp"
#include "hazmon/rng.hpp"
#include "hazmon/smoothing.hpp"
#include "oracles.hpp"

using hazmon::BandwidthDiagnostic;
using hazmon::default_bandwidth;
using hazmon::IsotonicHazardFit;
using hazmon::kernel;
using hazmon::kernel_cdf;
using hazmon::kernel_cdf_integral;
using hazmon::RngStream;
using hazmon::smooth_hazard;
using hazmon::SmoothHazard;
using hazmon::validate_bandwidth;
using hazmon::oracles::romberg;

namespace {

IsotonicHazardFit step_fit(std::vector<double> breakpoints,
                           std::vector<double> levels) {
  IsotonicHazardFit fit;
  fit.hi_eff = breakpoints.back();
  fit.penalty = 0.1;
  fit.breakpoints = std::move(breakpoints);
  fit.levels = std::move(levels);
  return fit;
}

IsotonicHazardFit random_fit(std::uint32_t replicate) {
  RngStream rng(777, 0, replicate, 0);
  const int pieces = 1 + static_cast<int>(rng.next_u64() % 5);
  std::vector<double> bp{0.0};
  std::vector<double> lv;
  double level = 0.05 + rng.next_uniform();
  for (int j = 0; j < pieces; ++j) {
    bp.push_back(bp.back() + 0.2 + rng.next_uniform());
    lv.push_back(level);
    level += rng.next_uniform();
  }
  return step_fit(std::move(bp), std::move(lv));
}

}  // namespace

TEST_CASE("kernel shape and normalization") {
  CHECK(kernel(0.0) == doctest::Approx(35.0 / 32.0));
  CHECK(kernel(1.0) == 0.0);
  CHECK(kernel(-1.0) == 0.0);
  CHECK(kernel(1.5) == 0.0);
  CHECK(kernel(-2.0) == 0.0);
  CHECK(kernel(0.5) == doctest::Approx((35.0 / 32.0) * std::pow(0.75, 3)));

  const auto mass =
      romberg([](double u) { return kernel(u); }, -1.0, 1.0, 1e-13);
  REQUIRE(mass.converged);
  CHECK(mass.value == doctest::Approx(1.0).epsilon(1e-12));

  const auto second =
      romberg([](double u) { return u * u * kernel(u); }, -1.0, 1.0, 1e-12);
  REQUIRE(second.converged);
  CHECK(second.value == doctest::Approx(1.0 / 9.0).epsilon(1e-10));

  const auto mean =
      romberg([](double u) { return u * kernel(u); }, -1.0, 1.0, 1e-13);
  CHECK(std::fabs(mean.value) <= 1e-12);
}

TEST_CASE("kernel antiderivatives") {
  CHECK(kernel_cdf(-1.0) == 0.0);
  CHECK(kernel_cdf(-1.5) == 0.0);
  CHECK(std::fabs(kernel_cdf(0.0) - 0.5) <= 1e-14);
  CHECK(kernel_cdf(1.0) == 1.0);
  CHECK(kernel_cdf(2.0) == 1.0);

  // kernel_cdf integrates the kernel.
  for (double u : {-0.9, -0.3, 0.1, 0.6, 0.95}) {
    const auto q = romberg([](double t) { return kernel(t); }, -1.0, u, 1e-13);
    CHECK(kernel_cdf(u) == doctest::Approx(q.value).epsilon(1e-11));
  }

  // kernel_cdf_integral integrates kernel_cdf; above 1 it is exactly u
  // because the kernel has mean zero.
  CHECK(kernel_cdf_integral(-1.0) == 0.0);
  CHECK(kernel_cdf_integral(1.0) == 1.0);
  CHECK(kernel_cdf_integral(2.5) == 2.5);
  CHECK(kernel_cdf_integral(0.0) == doctest::Approx(35.0 / 256.0));
  for (double u : {-0.6, -0.2, 0.4, 0.8}) {
    const auto q =
        romberg([](double t) { return kernel_cdf(t); }, -1.0, u, 1e-13);
    CHECK(kernel_cdf_integral(u) == doctest::Approx(q.value).epsilon(1e-11));
  }
}

TEST_CASE("bandwidth default and diagnostic") {
  CHECK(default_bandwidth(50) == doctest::Approx(std::pow(50.0, -0.25)));

  const BandwidthDiagnostic d1 = validate_bandwidth(100, std::pow(100.0, -0.25));
  CHECK_FALSE(d1.too_small);
  const BandwidthDiagnostic d2 = validate_bandwidth(100, std::pow(100.0, -1.0 / 3.0));
  CHECK(d2.too_small);
  const BandwidthDiagnostic d3 = validate_bandwidth(100, 0.5);
  CHECK_FALSE(d3.too_small);
  CHECK(d3.ratio == doctest::Approx(12.5 / std::log(2.0)).epsilon(1e-12));

  CHECK_THROWS_AS(validate_bandwidth(50, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(validate_bandwidth(50, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(validate_bandwidth(50, std::nan("")), std::invalid_argument);
}

TEST_CASE("smoothing rejects degenerate inputs") {
  const IsotonicHazardFit flat = step_fit({0.0, 1.0, 2.0}, {0.0, 1.0});
  CHECK_THROWS_AS(smooth_hazard(flat, 0.3), hazmon::degenerate_fit_error);
  const IsotonicHazardFit ok = step_fit({0.0, 2.0}, {1.0});
  CHECK_THROWS_AS(smooth_hazard(ok, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(smooth_hazard(ok, -1.0), std::invalid_argument);
}

TEST_CASE("smoothed hazard of a constant fit is constant") {
  const SmoothHazard s = smooth_hazard(step_fit({0.0, 3.0}, {2.0}), 0.5);
  // The only atom sits at 0 with mass 2; past one bandwidth the convolution
  // is exactly the constant, at 0 it is halved.
  CHECK(s.hazard(0.5) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(s.hazard(2.0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(s.hazard(0.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(s.extension_level() == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(s.cumhaz(3.5) ==
        doctest::Approx(s.cumhaz(3.0) + 0.5 * 2.0).epsilon(1e-12));
  CHECK_THROWS_AS(s.hazard(-0.1), std::domain_error);
  CHECK_THROWS_AS(s.cumhaz(-0.1), std::domain_error);
}

TEST_CASE("reflection removes the halving bias at zero") {
  const SmoothHazard s = smooth_hazard(step_fit({0.0, 3.0}, {2.0}), 0.5, true);
  CHECK(s.hazard(0.0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(s.hazard(0.2) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(s.hazard(1.7) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("smoothed cumulative hazard matches quadrature on random fits") {
  for (std::uint32_t rep = 0; rep < 10; ++rep) {
    const IsotonicHazardFit fit = random_fit(rep);
    const double b = 0.1 + 0.2 * (rep % 4);
    for (bool reflect : {false, true}) {
      const SmoothHazard s = smooth_hazard(fit, b, reflect);
      for (double frac : {0.2, 0.55, 0.95}) {
        const double x = frac * fit.hi_eff;
        const auto q =
            romberg([&](double t) { return s.hazard(t); }, 0.0, x, 1e-11);
        REQUIRE(q.converged);
        CHECK(s.cumhaz(x) ==
              doctest::Approx(q.value).epsilon(1e-9).scale(1.0));
      }
    }
  }
}

TEST_CASE("smoothed hazard is nondecreasing and cumhaz strictly increasing") {
  for (std::uint32_t rep = 0; rep < 6; ++rep) {
    const IsotonicHazardFit fit = random_fit(40 + rep);
    const SmoothHazard s = smooth_hazard(fit, 0.3, rep % 2 == 1);
    double prev_h = -1.0, prev_c = -1.0;
    for (int i = 0; i <= 300; ++i) {
      const double x = 1.2 * fit.hi_eff * i / 300.0;
      const double h = s.hazard(x);
      const double c = s.cumhaz(x);
      CHECK(h >= prev_h - 1e-12);
      CHECK(c > prev_c);
      CHECK(s.hazard_deriv(x) >= -1e-12);
      prev_h = h;
      prev_c = c;
    }
  }
}

TEST_CASE("smoothed hazard derivative matches finite differences") {
  const IsotonicHazardFit fit = random_fit(99);
  const SmoothHazard s = smooth_hazard(fit, 0.4);
  const double step = 1e-4;
  for (double frac : {0.1, 0.35, 0.6, 0.9}) {
    const double x = std::max(step, frac * fit.hi_eff);
    const double fd = (s.hazard(x + step) - s.hazard(x - step)) / (2.0 * step);
    CHECK(std::fabs(s.hazard_deriv(x) - fd) <= 2e-6);
  }
  // Beyond the domain the extension is constant.
  CHECK(s.hazard_deriv(fit.hi_eff + 1.0) == 0.0);
}

TEST_CASE("inversion of the smoothed cumulative hazard") {
  for (std::uint32_t rep = 0; rep < 10; ++rep) {
    const IsotonicHazardFit fit = random_fit(100 + rep);
    const SmoothHazard s = smooth_hazard(fit, 0.25);
    CHECK(std::fabs(s.inverse_cumhaz(0.0)) <= 1e-12);
    RngStream rng(9000, 0, rep, 0);
    double prev_x = 0.0, prev_e = 0.0;
    for (int i = 0; i < 150; ++i) {
      const double e = prev_e + 0.05 * rng.next_exponential();
      // A warm start from the previous inverse must agree with a cold start
      // to the stated 1e-12 tolerance in x.
      const double warm = s.inverse_cumhaz(e, prev_x);
      const double cold = s.inverse_cumhaz(e);
      CHECK(std::fabs(warm - cold) <= 2e-12);
      CHECK(std::fabs(s.cumhaz(warm) - e) <= 1e-10);
      CHECK(warm >= prev_x - 1e-9);
      prev_x = warm;
      prev_e = e;
    }
  }
}

TEST_CASE("inverse handles values beyond the interval in closed form") {
  const SmoothHazard s = smooth_hazard(step_fit({0.0, 1.0}, {1.0}), 0.3);
  // Far beyond hi_eff the cumulative hazard is cumhaz(hi_eff) + level*(x-1),
  // so the inverse of cumhaz(1) + 7 with unit extension level is exactly 8.
  const double e = s.cumhaz(1.0) + 7.0;
  CHECK(s.inverse_cumhaz(e) == doctest::Approx(8.0).epsilon(1e-10));
  CHECK_THROWS_AS(s.inverse_cumhaz(-0.5), std::domain_error);
}
