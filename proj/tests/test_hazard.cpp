#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "hazmon/errors.hpp"
#include "hazmon/hazard.hpp"

using hazmon::default_penalty;
using hazmon::degenerate_interval_error;
using hazmon::ecdf;
using hazmon::empirical_cumhaz;
using hazmon::fhat_from_cumhaz;
using hazmon::Interval;
using hazmon::IsotonicHazardFit;
using hazmon::penalized_isotonic_hazard;
using hazmon::restricted_gcm_cumhaz;
using hazmon::RestrictedGcm;
using hazmon::Sample;
using hazmon::StepFn;

TEST_CASE("empirical distribution and cumulative hazard") {
  const Sample s = Sample::from_data({1.0, 2.0, 4.0});
  const StepFn f = ecdf(s);
  CHECK(f(0.5) == 0.0);
  CHECK(f(1.0) == doctest::Approx(1.0 / 3.0));
  CHECK(f(3.9) == doctest::Approx(2.0 / 3.0));
  CHECK(f(4.0) == 1.0);

  const StepFn h = empirical_cumhaz(s);
  CHECK(h(0.5) == 0.0);
  CHECK(h(1.0) == doctest::Approx(-std::log(2.0 / 3.0)));
  CHECK(h(2.0) == doctest::Approx(std::log(3.0)));
  CHECK(h(4.0) == std::numeric_limits<double>::infinity());
  CHECK(h(100.0) == std::numeric_limits<double>::infinity());
  // Left limit at the largest observation is log n.
  CHECK(h.left_limit(4.0) == doctest::Approx(std::log(3.0)));
}

TEST_CASE("Nelson-Aalen cumulative hazard") {
  const Sample s = Sample::from_data({1.0, 2.0, 4.0});
  const StepFn h = hazmon::nelson_aalen_cumhaz(s);
  CHECK(h(0.5) == 0.0);
  CHECK(h(1.0) == doctest::Approx(1.0 / 3.0));
  CHECK(h(2.0) == doctest::Approx(1.0 / 3.0 + 1.0 / 2.0));
  // Finite total mass: the harmonic number 1/3 + 1/2 + 1.
  CHECK(h(4.0) == doctest::Approx(11.0 / 6.0));
  CHECK(h(100.0) == doctest::Approx(11.0 / 6.0));
  CHECK(h.left_limit(4.0) == doctest::Approx(5.0 / 6.0));
}

TEST_CASE("restricted Nelson-Aalen isotonization on the two-point sample") {
  const Sample s = Sample::from_data({1.0, 2.0});
  const RestrictedGcm fit =
      hazmon::restricted_gcm_nelson_aalen(s, Interval{0.0, 2.5});
  CHECK(fit.hi_eff == 2.0);  // truncated at the largest observation
  CHECK(fit.cumhaz(0.0) == 0.0);
  // (1, 0) lies below the chord from (0,0) to (2, 1/2), so it is a knot.
  CHECK(fit.cumhaz(1.0) == 0.0);
  CHECK(fit.cumhaz(1.5) == doctest::Approx(0.25));
  CHECK(fit.cumhaz(2.0) == doctest::Approx(0.5));
  CHECK_THROWS_AS(
      hazmon::restricted_gcm_nelson_aalen(s, Interval{2.0, 2.5}),
      degenerate_interval_error);
}

TEST_CASE("restricted isotonized cumulative hazard on the two-point sample") {
  const Sample s = Sample::from_data({1.0, 2.0});
  const RestrictedGcm fit = restricted_gcm_cumhaz(s, Interval{0.0, 2.5});
  CHECK(fit.hi_eff == 2.0);  // truncated at the largest observation
  CHECK(fit.cumhaz(0.0) == 0.0);
  // (1, 0) lies below the chord from (0,0) to (2, log 2), so it is a knot.
  CHECK(fit.cumhaz(1.0) == 0.0);
  CHECK(fit.cumhaz(1.5) == doctest::Approx(0.5 * std::log(2.0)));
  CHECK(fit.cumhaz(2.0) == doctest::Approx(std::log(2.0)));
}

TEST_CASE("restricted fit convexifies the three-point diagram") {
  const Sample s = Sample::from_data({1.0, 1.2, 3.0});
  const RestrictedGcm fit = restricted_gcm_cumhaz(s, Interval{0.0, 2.9});
  CHECK(fit.hi_eff == 2.9);
  // The 1.2 diagram point lies above the hull.
  CHECK(fit.cumhaz(1.2) == doctest::Approx(0.2 * std::log(3.0) / 1.9));
  CHECK(fit.cumhaz(2.9) == doctest::Approx(std::log(3.0)));
  CHECK(fhat_from_cumhaz(fit.cumhaz, 1.2) ==
        doctest::Approx(1.0 - std::exp(-0.2 * std::log(3.0) / 1.9)));
}

TEST_CASE("observations equal to the left endpoint count as interior") {
  const Sample s = Sample::from_data({1.0, 2.0, 3.0});
  const RestrictedGcm fit = restricted_gcm_cumhaz(s, Interval{1.0, 2.5});
  CHECK(fit.cumhaz.xmin() == 1.0);
  CHECK(fit.cumhaz(1.0) == 0.0);  // left limit of the cumhaz at 1
  CHECK(fit.hi_eff == 2.5);
}

TEST_CASE("degenerate intervals are rejected") {
  const Sample s = Sample::from_data({1.0, 2.0});
  // Collapses after truncation: lo beyond the largest observation.
  CHECK_THROWS_AS(restricted_gcm_cumhaz(s, Interval{2.0, 3.0}),
                  degenerate_interval_error);
  // No observation inside.
  CHECK_THROWS_AS(restricted_gcm_cumhaz(s, Interval{0.0, 0.5}),
                  degenerate_interval_error);
  CHECK_THROWS_AS(restricted_gcm_cumhaz(s, Interval{1.25, 1.75}),
                  degenerate_interval_error);
}

TEST_CASE("penalized isotonic hazard with zero penalty on two points") {
  const Sample s = Sample::from_data({1.0, 2.0});
  const IsotonicHazardFit fit = penalized_isotonic_hazard(s, 2.5, 0.0);
  CHECK(fit.hi_eff == 2.0);
  REQUIRE(fit.breakpoints.size() == 3);
  CHECK(fit.breakpoints[0] == 0.0);
  CHECK(fit.breakpoints[1] == doctest::Approx(1.0));
  CHECK(fit.breakpoints[2] == 2.0);
  REQUIRE(fit.levels.size() == 2);
  CHECK(fit.levels[0] == 0.0);  // flat start is legal without a penalty
  CHECK(fit.levels[1] == doctest::Approx(std::log(2.0)));
}

TEST_CASE("a positive penalty lifts the first level") {
  const Sample s = Sample::from_data({1.0, 2.0});
  const IsotonicHazardFit fit = penalized_isotonic_hazard(s, 2.5);
  CHECK(fit.penalty == doctest::Approx(default_penalty(2)));
  CHECK(fit.levels.front() > 0.0);
  // Levels are nondecreasing and breakpoints span [0, hi_eff].
  for (std::size_t i = 0; i + 1 < fit.levels.size(); ++i)
    CHECK(fit.levels[i] <= fit.levels[i + 1]);
  CHECK(fit.breakpoints.front() == 0.0);
  CHECK(fit.breakpoints.back() == fit.hi_eff);
}

TEST_CASE("penalized fit reconstructs a nondecreasing hazard's mass") {
  // On a larger sample the fitted step hazard integrates back to the
  // empirical cumulative hazard at hi_eff minus nothing: the GCM matches the
  // diagram at its endpoints.
  std::vector<double> data;
  for (int i = 1; i <= 40; ++i) data.push_back(0.07 * i * i + 0.1);
  const Sample s = Sample::from_data(std::move(data));
  const IsotonicHazardFit fit = penalized_isotonic_hazard(s, 1e9);
  double integral = 0.0;
  for (std::size_t j = 0; j < fit.levels.size(); ++j)
    integral += fit.levels[j] * (fit.breakpoints[j + 1] - fit.breakpoints[j]);
  const StepFn h = empirical_cumhaz(s);
  CHECK(integral == doctest::Approx(h.left_limit(s.max())).epsilon(1e-12));
}

TEST_CASE("default penalty is 2 n^(-2/3)") {
  CHECK(default_penalty(50) == doctest::Approx(2.0 * std::pow(50.0, -2.0 / 3.0)));
  CHECK(default_penalty(8) == doctest::Approx(0.5));
}
