#include <doctest.h>

#include <limits>
#include <stdexcept>
#include <vector>

#include "hazmon/sample.hpp"

using hazmon::Interval;
using hazmon::Sample;
using hazmon::TieBreak;
using hazmon::validate_interval;

TEST_CASE("sample construction sorts and validates") {
  const Sample s = Sample::from_data({3.0, 1.0, 2.0});
  CHECK(s.values() == std::vector<double>{1.0, 2.0, 3.0});
  CHECK(s.size() == 3);
  CHECK(s.min() == 1.0);
  CHECK(s.max() == 3.0);
  CHECK(s.tie_adjustments() == 0);

  CHECK_THROWS_AS(Sample::from_data({1.0}), std::invalid_argument);
  CHECK_THROWS_AS(Sample::from_data({0.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(Sample::from_data({-1.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(
      Sample::from_data({1.0, std::numeric_limits<double>::infinity()}),
      std::invalid_argument);
  CHECK_THROWS_AS(
      Sample::from_data({1.0, std::numeric_limits<double>::quiet_NaN()}),
      std::invalid_argument);
}

TEST_CASE("exact ties raise by default and are perturbed on request") {
  CHECK_THROWS_AS(Sample::from_data({1.0, 1.0, 2.0}), std::invalid_argument);

  const Sample s = Sample::from_data({1.0, 1.0, 1.0, 2.0}, TieBreak::perturb);
  CHECK(s.tie_adjustments() == 2);
  const std::vector<double>& v = s.values();
  REQUIRE(v.size() == 4);
  CHECK(v[0] == 1.0);
  CHECK(v[1] > v[0]);
  CHECK(v[2] > v[1]);
  CHECK(v[3] == 2.0);
  // Perturbation scale: i * 1e-9 * max value.
  CHECK(v[1] == doctest::Approx(1.0 + 2e-9).epsilon(1e-12));
  CHECK(v[2] == doctest::Approx(1.0 + 4e-9).epsilon(1e-12));
}

TEST_CASE("perturbation is deterministic") {
  const Sample a = Sample::from_data({5.0, 5.0, 7.0}, TieBreak::perturb);
  const Sample b = Sample::from_data({5.0, 7.0, 5.0}, TieBreak::perturb);
  CHECK(a.values() == b.values());
}

TEST_CASE("empirical quantile uses the ceil(q n) order statistic") {
  const Sample s = Sample::from_data({10.0, 20.0, 30.0, 40.0});
  CHECK(s.empirical_quantile(0.5) == 20.0);    // ceil(2) = 2nd
  CHECK(s.empirical_quantile(0.51) == 30.0);   // ceil(2.04) = 3rd
  CHECK(s.empirical_quantile(0.95) == 40.0);   // ceil(3.8) = 4th
  CHECK(s.empirical_quantile(0.25) == 10.0);
  CHECK(s.empirical_quantile(0.26) == 20.0);
  CHECK_THROWS_AS(s.empirical_quantile(0.0), std::invalid_argument);
  CHECK_THROWS_AS(s.empirical_quantile(1.0), std::invalid_argument);
}

TEST_CASE("interval validation") {
  CHECK_NOTHROW(validate_interval(Interval{0.0, 1.0}));
  CHECK_NOTHROW(validate_interval(Interval{0.5, 2.0}));
  CHECK_THROWS_AS(validate_interval(Interval{-0.1, 1.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(validate_interval(Interval{1.0, 1.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(validate_interval(Interval{2.0, 1.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      validate_interval(Interval{0.0, std::numeric_limits<double>::infinity()}),
      std::invalid_argument);
}
