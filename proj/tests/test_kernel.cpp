#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "hawkes/kernel.hpp"
#include "support/oracles.hpp"

using hawkes::Kernel;
using testsupport::integrate;

TEST_CASE("exponential kernel closed forms") {
  const Kernel k = Kernel::exponential(2.0, 3.0);

  CHECK(k.shape() == Kernel::Shape::Exponential);
  CHECK(k.evaluate(0.0) == doctest::Approx(2.0));
  CHECK(k.evaluate(1.0) == doctest::Approx(2.0 * std::exp(-3.0)));
  CHECK(k.total_mass() == doctest::Approx(2.0 / 3.0));

  SUBCASE("laplace transform matches its definition") {
    for (double alpha : {0.0, 0.5, 1.0, 4.0}) {
      // integrate far enough that the tail is below the tolerance
      const double tail = 60.0 / (3.0 + alpha);
      const double numeric = integrate(
          [&](double s) { return k.evaluate(s) * std::exp(-alpha * s); }, 0.0,
          tail, 1e-13);
      CHECK(k.laplace(alpha) == doctest::Approx(numeric).epsilon(1e-10));
    }
    CHECK(k.laplace(0.0) == doctest::Approx(k.total_mass()));
  }

  SUBCASE("partial integral matches quadrature") {
    for (double u : {0.0, 0.1, 0.7, 3.0, 25.0}) {
      const double numeric =
          integrate([&](double s) { return k.evaluate(s); }, 0.0, u, 1e-13);
      CHECK(k.integral(u) == doctest::Approx(numeric).epsilon(1e-10));
    }
  }
}

TEST_CASE("box kernel closed forms") {
  const Kernel k = Kernel::box(1.5, 2.0);

  CHECK(k.shape() == Kernel::Shape::Box);
  CHECK(k.evaluate(0.0) == doctest::Approx(1.5));
  CHECK(k.evaluate(2.0) == doctest::Approx(1.5));  // support is closed
  CHECK(k.evaluate(2.0000001) == 0.0);
  CHECK(k.total_mass() == doctest::Approx(3.0));

  SUBCASE("laplace transform matches its definition") {
    for (double alpha : {0.0, 0.3, 1.0, 5.0}) {
      const double numeric = integrate(
          [&](double s) { return 1.5 * std::exp(-alpha * s); }, 0.0, 2.0,
          1e-13);
      CHECK(k.laplace(alpha) == doctest::Approx(numeric).epsilon(1e-10));
    }
  }

  SUBCASE("partial integral is piecewise linear then flat") {
    CHECK(k.integral(0.5) == doctest::Approx(0.75));
    CHECK(k.integral(2.0) == doctest::Approx(3.0));
    CHECK(k.integral(10.0) == doctest::Approx(3.0));
    for (double u : {0.25, 1.9, 2.0, 6.0}) {
      const double numeric =
          integrate([&](double s) { return k.evaluate(s); }, 0.0, u, 1e-13);
      CHECK(k.integral(u) == doctest::Approx(numeric).epsilon(1e-10));
    }
  }
}

TEST_CASE("growth exponent solves the transform equation") {
  SUBCASE("exponential has the affine closed form") {
    const Kernel k = Kernel::exponential(3.0, 1.0);
    // p * a / (b + alpha) = 1  at  alpha = p a - b
    CHECK(k.growth_exponent(0.5) == doctest::Approx(0.5));
    CHECK(k.growth_exponent(1.0) == doctest::Approx(2.0));
    const double alpha = k.growth_exponent(0.8);
    CHECK(0.8 * k.laplace(alpha) == doctest::Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("box root found by bisection satisfies the equation") {
    const Kernel k = Kernel::box(4.0, 1.0);
    const double alpha = k.growth_exponent(0.5);
    CHECK(0.5 * k.laplace(alpha) == doctest::Approx(1.0).epsilon(1e-10));
    // same fixed point through the quadrature oracle
    const double numeric = integrate(
        [&](double s) { return k.evaluate(s) * std::exp(-alpha * s); }, 0.0,
        1.0, 1e-13);
    CHECK(0.5 * numeric == doctest::Approx(1.0).epsilon(1e-9));
    // 2 (1 - e^-x) = x has its positive root near 1.5936
    CHECK(alpha == doctest::Approx(1.5936).epsilon(1e-3));
  }

  SUBCASE("rejected outside the growing regime") {
    CHECK_THROWS_AS(Kernel::exponential(1.0, 1.0).growth_exponent(0.5),
                    std::domain_error);
    CHECK_THROWS_AS(Kernel::box(1.0, 1.0).growth_exponent(1.0),
                    std::domain_error);
    CHECK_THROWS_AS(Kernel::exponential(5.0, 1.0).growth_exponent(0.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(Kernel::exponential(5.0, 1.0).growth_exponent(1.5),
                    std::invalid_argument);
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(Kernel::exponential(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Kernel::exponential(1.0, -2.0), std::invalid_argument);
  CHECK_THROWS_AS(Kernel::box(-1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Kernel::box(1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(Kernel::exponential(1.0, 1.0).evaluate(-0.1),
                  std::invalid_argument);
  CHECK_THROWS_AS(Kernel::box(1.0, 1.0).laplace(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(Kernel::box(1.0, 1.0).integral(-1.0), std::invalid_argument);
}

TEST_CASE("describe names the shape and parameters") {
  CHECK(Kernel::exponential(1.0, 2.0).describe().find("exponential") !=
        std::string::npos);
  CHECK(Kernel::box(1.0, 2.0).describe().find("box") != std::string::npos);
}
