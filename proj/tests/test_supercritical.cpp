#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "hawkes/events.hpp"
#include "hawkes/rng.hpp"
#include "hawkes/supercritical.hpp"

using hawkes::EventData;
using hawkes::supercritical_stats;

TEST_CASE("hand-evaluated dispersion statistic") {
  const auto s = supercritical_stats({2.0, 4.0}, 2, 1.0);
  CHECK(s.z_bar == doctest::Approx(3.0));
  CHECK(s.u == doctest::Approx(-4.0 / 9.0));
  CHECK(s.p_hat == 0.0);  // negative u pins the estimate at zero
  CHECK(s.growth_rate == doctest::Approx(std::log(3.0)));

  SUBCASE("t only enters the growth diagnostic") {
    const auto s2 = supercritical_stats({2.0, 4.0}, 2, 5.0);
    CHECK(s2.u == doctest::Approx(-4.0 / 9.0));
    CHECK(s2.growth_rate == doctest::Approx(std::log(3.0) / 5.0));
  }
}

TEST_CASE("degenerate count vectors") {
  SUBCASE("equal positive counts leave only the negative correction") {
    const auto s = supercritical_stats({5.0, 5.0, 5.0}, 3, 2.0);
    CHECK(s.u == doctest::Approx(-3.0 / 5.0));
    CHECK(s.p_hat == 0.0);
  }

  SUBCASE("no events at all") {
    const auto s = supercritical_stats({0.0, 0.0}, 2, 2.0);
    CHECK(s.z_bar == 0.0);
    CHECK(s.u == 0.0);
    CHECK(s.p_hat == 1.0);
    CHECK(std::isnan(s.growth_rate));
  }
}

TEST_CASE("dispersion is scale free, the correction is not") {
  const std::vector<double> base{3.0, 7.0, 5.0, 9.0};
  const auto s1 = supercritical_stats(base, 4, 1.0);
  std::vector<double> scaled;
  for (double z : base) scaled.push_back(10.0 * z);
  const auto s2 = supercritical_stats(scaled, 4, 1.0);
  // (u + n / z_bar) is the pure spread term and is scale invariant
  const double spread1 = s1.u + 4.0 / s1.z_bar;
  const double spread2 = s2.u + 4.0 / s2.z_bar;
  CHECK(spread1 == doctest::Approx(spread2).epsilon(1e-12));
  CHECK(s2.z_bar == doctest::Approx(10.0 * s1.z_bar));
}

TEST_CASE("p estimate stays a probability under fuzzing") {
  hawkes::CounterRng rng(77);
  for (int trial = 0; trial < 500; ++trial) {
    const int k = 1 + static_cast<int>(rng.next_u64() % 20);
    std::vector<double> counts(k);
    for (double& z : counts)
      z = static_cast<double>(rng.next_u64() % 50);  // zeros included
    const auto s = supercritical_stats(counts, k + static_cast<int>(rng.next_u64() % 5), 1.0);
    CHECK(s.p_hat >= 0.0);
    CHECK(s.p_hat <= 1.0);
    CHECK(std::isfinite(s.u));
  }
}

TEST_CASE("validation") {
  CHECK_THROWS_AS(supercritical_stats({}, 1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(supercritical_stats({1.0, 2.0}, 1, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(supercritical_stats({1.0}, 1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(supercritical_stats({-1.0}, 1, 1.0), std::invalid_argument);
}

TEST_CASE("event-data wrapper counts on the full observation window") {
  // counts on (0, t]: individual 0 has 2, individual 1 has 4
  const EventData d(3, 4.0,
                    {{0.5, 1.5}, {0.2, 0.4, 0.6, 3.9}, {1.0, 2.0, 3.0}}, 0);
  const auto s = estimate_supercritical(d, 4.0, 2);
  CHECK(s.z_bar == doctest::Approx(3.0));
  // population is 3 here: (3/2)(1/9 + 1/9) - 3/3
  CHECK(s.u == doctest::Approx(-2.0 / 3.0));
  CHECK(s.p_hat == 0.0);

  SUBCASE("shorter window drops late events") {
    const auto s2 = estimate_supercritical(d, 1.0, 2);
    // counts on (0, 1] are (1, 3)
    CHECK(s2.z_bar == doctest::Approx(2.0));
  }

  SUBCASE("k and t validation") {
    CHECK_THROWS_AS(estimate_supercritical(d, 4.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(estimate_supercritical(d, 4.0, 4), std::invalid_argument);
    CHECK_THROWS_AS(estimate_supercritical(d, 5.0, 2), std::invalid_argument);
  }
}
