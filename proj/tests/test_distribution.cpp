#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <vector>

#include "colombeau/distribution.hpp"
#include "oracles.hpp"

using namespace colombeau;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

Distribution abs_x() {
  return Distribution::piecewise({{-kInf, 0.0, {0.0, -1.0}}, {0.0, kInf, {0.0, 1.0}}});
}

Distribution x_squared() {
  return Distribution::piecewise({{-kInf, kInf, {0.0, 0.0, 1.0}}});
}

}  // namespace

TEST_CASE("dirac pairings are exact derivative evaluations") {
  const SmoothExpr b = bump();
  CHECK(pair(Distribution::dirac(), b) == b.eval(0.0));
  CHECK(pair(Distribution::dirac(0.25), b) == b.eval(0.25));
  CHECK(pair(Distribution::dirac(0.0, 1), b) == -b.derive().eval(0.0));
  CHECK(pair(Distribution::dirac(0.0, 2), b) == b.derive_n(2).eval(0.0));
  CHECK(pair(Distribution::dirac(0.3, 3), b) == -b.derive_n(3).eval(0.3));
}

TEST_CASE("heaviside pairing against the frozen half integral") {
  const SmoothExpr rho = prod({constant(1.0 / oracle::kI0), bump()});
  const double v = pair(Distribution::heaviside(), rho, {1e-12, 40});
  CHECK(v == doctest::Approx(0.5).epsilon(1e-10));
  const double raw = pair(Distribution::heaviside(), bump(), {1e-12, 40});
  CHECK(raw == doctest::Approx(0.5 * oracle::kI0).epsilon(1e-10));
}

TEST_CASE("piecewise pairing equals a Simpson oracle") {
  const Distribution u = abs_x();
  const SmoothExpr f = bump();
  const double got = pair(u, f, {1e-12, 40});
  const double ref = oracle::composite_simpson(
      [&](double x) { return std::abs(x) * f.eval(x); }, -1.0, 1.0, 1 << 13);
  CHECK(got == doctest::Approx(ref).epsilon(1e-9));
}

TEST_CASE("pairing an unbounded piece requires probe support") {
  CHECK_THROWS_AS(pair(x_squared(), variable()), std::invalid_argument);
  CHECK_NOTHROW(pair(x_squared(), bump()));
}

TEST_CASE("piecewise validation") {
  CHECK_THROWS_AS(Distribution::piecewise({{1.0, 0.0, {1.0}}}), std::invalid_argument);
  CHECK_THROWS_AS(Distribution::piecewise({{1.0, 1.0, {1.0}}}), std::invalid_argument);
  CHECK_THROWS_AS(
      Distribution::piecewise({{0.0, 2.0, {1.0}}, {1.0, 3.0, {2.0}}}),
      std::invalid_argument);
  CHECK_THROWS_AS(
      Distribution::piecewise({{0.0, 1.0, {2.0}}, {-1.0, 0.0, {1.0}}}),
      std::invalid_argument);
  CHECK_THROWS_AS(Distribution::piecewise({{0.0, 1.0, {}}}), std::invalid_argument);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(Distribution::piecewise({{0.0, 1.0, {nan}}}), std::invalid_argument);
  CHECK_NOTHROW(Distribution::piecewise({{-1.0, 0.0, {1.0}}, {0.0, 1.0, {2.0}}}));
}

TEST_CASE("eval is right-continuous at breakpoints and 0 in gaps") {
  const Distribution u =
      Distribution::piecewise({{-1.0, 0.0, {5.0}}, {0.0, 1.0, {7.0}}});
  CHECK(u.eval(-0.5) == 5.0);
  CHECK(u.eval(0.0) == 7.0);
  CHECK(u.eval(0.5) == 7.0);
  CHECK(u.eval(2.0) == 0.0);
  CHECK(u.eval(-3.0) == 0.0);

  const Distribution gap = Distribution::piecewise({{1.0, 2.0, {4.0}}});
  CHECK(gap.eval(0.0) == 0.0);
  CHECK(gap.eval(1.0) == 4.0);
  CHECK(gap.eval(2.0) == 4.0);

  CHECK_THROWS_AS(Distribution::dirac().eval(0.0), std::logic_error);
}

TEST_CASE("derivatives of piecewise data") {
  const Distribution u = x_squared();
  CHECK(u.eval_derivative(0.5, 0) == 0.25);
  CHECK(u.eval_derivative(0.5, 1) == 1.0);
  CHECK(u.eval_derivative(0.5, 2) == 2.0);
  CHECK(u.eval_derivative(0.5, 3) == 0.0);
  CHECK(u.eval_derivative(0.5, 9) == 0.0);

  const Distribution a = abs_x();
  CHECK(a.eval_derivative(-0.5, 1) == -1.0);
  CHECK(a.eval_derivative(0.5, 1) == 1.0);
  CHECK(a.eval_derivative(0.0, 1) == 1.0);
  CHECK_THROWS_AS(a.eval_derivative(0.0, -1), std::invalid_argument);
}

TEST_CASE("one-sided derivatives take strict limits") {
  const Distribution h = Distribution::heaviside();
  CHECK(h.eval_derivative_side(0.0, 0, -1) == 0.0);
  CHECK(h.eval_derivative_side(0.0, 0, +1) == 1.0);

  const Distribution a = abs_x();
  CHECK(a.eval_derivative_side(0.0, 1, -1) == -1.0);
  CHECK(a.eval_derivative_side(0.0, 1, +1) == 1.0);

  const Distribution gap = Distribution::piecewise({{1.0, 2.0, {4.0}}});
  CHECK(gap.eval_derivative_side(1.0, 0, -1) == 0.0);
  CHECK(gap.eval_derivative_side(1.0, 0, +1) == 4.0);
  CHECK(gap.eval_derivative_side(2.0, 0, +1) == 0.0);
  CHECK(gap.eval_derivative_side(2.0, 0, -1) == 4.0);
}

TEST_CASE("is_ck_on classifies smoothness across breakpoints") {
  const Interval w(-0.5, 0.5);
  CHECK(x_squared().is_ck_on(w, 0));
  CHECK(x_squared().is_ck_on(w, 3));
  CHECK(abs_x().is_ck_on(w, 0));
  CHECK_FALSE(abs_x().is_ck_on(w, 1));
  CHECK_FALSE(Distribution::heaviside().is_ck_on(w, 0));
  CHECK(Distribution::heaviside().is_ck_on(Interval(0.25, 0.5), 4));
  CHECK_FALSE(Distribution::dirac().is_ck_on(w, 0));

  const Distribution split = Distribution::piecewise(
      {{-1.0, 0.0, {0.0, 0.0, 1.0}}, {0.0, 1.0, {0.0, 0.0, 1.0}}});
  CHECK(split.is_ck_on(w, 2));
}

TEST_CASE("describe round-trip text forms") {
  CHECK(Distribution::dirac().describe() == "delta");
  CHECK(Distribution::dirac(0.0, 1).describe() == "delta'");
  CHECK(Distribution::dirac(0.5, 2).describe() == "delta''@0.5");
  CHECK(Distribution::heaviside().describe() == "H");
  const std::string pp = abs_x().describe();
  CHECK(pp.find("pp[") == 0);
  CHECK(pp.find("-inf") != std::string::npos);
}

TEST_CASE("DistSum pairing is linear") {
  DistSum s;
  s.terms.push_back({2.0, Distribution::dirac()});
  s.terms.push_back({-1.0, Distribution::dirac(0.0, 1)});
  const SmoothExpr b = bump();
  const double got = pair(s, b);
  const double want = 2.0 * pair(Distribution::dirac(), b) -
                      pair(Distribution::dirac(0.0, 1), b);
  CHECK(got == doctest::Approx(want).epsilon(1e-15));

  DistSum empty;
  CHECK(pair(empty, b) == 0.0);
  CHECK(empty.describe() == "0");
  CHECK(s.describe() == "2*delta + -1*delta'");
}

TEST_CASE("family members evaluate with derivatives") {
  FunctionFamily fam;
  fam.members.push_back({variable(), "x"});
  fam.members.push_back({abs_x(), "|x|"});
  fam.validate();
  CHECK(member_value(fam.members[0], 2.0, 0) == 2.0);
  CHECK(member_value(fam.members[0], 2.0, 1) == 1.0);
  CHECK(member_value(fam.members[0], 2.0, 2) == 0.0);
  CHECK(member_value(fam.members[1], -2.0, 0) == 2.0);
  CHECK(member_value(fam.members[1], -2.0, 1) == -1.0);

  FunctionFamily bad;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  FunctionFamily dirac_member;
  dirac_member.members.push_back({Distribution::dirac(), "delta"});
  CHECK_THROWS_AS(dirac_member.validate(), std::invalid_argument);
}
