#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "colombeau/errors.hpp"
#include "colombeau/quadrature.hpp"
#include "oracles.hpp"

using namespace colombeau;

TEST_CASE("interval helpers") {
  Interval a(-1.0, 2.0);
  CHECK(a.width() == doctest::Approx(3.0));
  CHECK(a.midpoint() == doctest::Approx(0.5));
  CHECK(a.contains(0.0));
  CHECK(a.contains(-1.0));
  CHECK(a.contains(2.0));
  CHECK_FALSE(a.contains(2.5));
  CHECK_FALSE(a.degenerate());
  CHECK(Interval(1.0, 1.0).degenerate());

  auto isect = intersect(Interval(-1.0, 1.0), Interval(0.5, 3.0));
  REQUIRE(isect.has_value());
  CHECK(isect->lo == 0.5);
  CHECK(isect->hi == 1.0);
  CHECK_FALSE(intersect(Interval(-1.0, 0.0), Interval(1.0, 2.0)).has_value());

  Interval h = hull(Interval(-1.0, 0.0), Interval(1.0, 2.0));
  CHECK(h.lo == -1.0);
  CHECK(h.hi == 2.0);
}

TEST_CASE("polynomial exactness and analytic values") {
  const double third = integrate([](double x) { return x * x; }, Interval(0.0, 1.0));
  CHECK(third == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

  const double s = integrate([](double x) { return std::sin(x); }, Interval(0.0, M_PI));
  CHECK(s == doctest::Approx(2.0).epsilon(1e-10));

  const double zero =
      integrate([](double x) { return std::sin(x); }, Interval(-1.0, 1.0));
  CHECK(std::abs(zero) < 1e-12);
}

TEST_CASE("bump integral against composite Simpson") {
  QuadConfig cfg;
  cfg.abs_tol = 1e-12;
  const double adaptive = integrate(oracle::raw_bump, Interval(-1.0, 1.0), cfg);
  const double fixed = oracle::composite_simpson(oracle::raw_bump, -1.0, 1.0, 1 << 14);
  CHECK(adaptive == doctest::Approx(oracle::kI0).epsilon(1e-12));
  CHECK(fixed == doctest::Approx(oracle::kI0).epsilon(1e-10));
}

TEST_CASE("tolerance is honored at loose and tight settings") {
  auto f = [](double x) { return std::exp(-x * x); };
  const double ref = oracle::composite_simpson(f, 0.0, 2.0, 1 << 15);
  QuadConfig loose{1e-6, 40};
  QuadConfig tight{1e-12, 40};
  CHECK(std::abs(integrate(f, Interval(0.0, 2.0), loose) - ref) < 1e-6);
  CHECK(std::abs(integrate(f, Interval(0.0, 2.0), tight) - ref) < 1e-11);
}

TEST_CASE("zero integrand and degenerate domain cost nothing") {
  CHECK(integrate([](double) { return 0.0; }, Interval(-5.0, 5.0)) == 0.0);
  CHECK(integrate([](double x) { return x; }, Interval(1.0, 1.0)) == 0.0);
}

TEST_CASE("depth exhaustion raises DepthExceeded") {
  QuadConfig cfg;
  cfg.abs_tol = 1e-14;
  cfg.max_depth = 3;
  auto needle = [](double x) { return oracle::raw_bump(x * 4096.0); };
  CHECK_THROWS_AS(integrate(needle, Interval(-1.0, 1.0), cfg), DepthExceeded);
}

TEST_CASE("determinism: identical calls give identical bits") {
  auto f = [](double x) { return std::cos(3.0 * x) * oracle::raw_bump(x); };
  const double a = integrate(f, Interval(-1.0, 1.0));
  const double b = integrate(f, Interval(-1.0, 1.0));
  CHECK(a == b);
}
