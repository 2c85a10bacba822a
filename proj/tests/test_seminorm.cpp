#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "colombeau/seminorm.hpp"
#include "oracles.hpp"

using namespace colombeau;

namespace {

KernelSpec model_spec() { return {KernelKind::Model, base_bump(), cutoff_s()}; }

double fit_slope(const std::vector<double>& eps, const std::vector<double>& val) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double n = static_cast<double>(eps.size());
  for (std::size_t i = 0; i < eps.size(); ++i) {
    const double x = std::log(eps[i]);
    const double y = std::log(val[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

TEST_CASE("norm_f on reference functions") {
  const Interval K(0.0, 1.0);
  const SmoothExpr x2 = intpow(variable(), 2);
  CHECK(norm_f(x2, K, 1) == 2.0);
  CHECK(norm_f(x2, K, 0) == 1.0);
  CHECK(norm_f(constant(-3.5), Interval(-1.0, 1.0), 4) == 3.5);
  const double eps = 0.0625;
  const SmoothExpr k = scale(base_bump(), eps);
  const double peak = base_bump().expr.eval(0.0) / eps;
  CHECK(norm_f(k, Interval(-1.0, 1.0), 0) == doctest::Approx(peak).epsilon(1e-12));
}

TEST_CASE("norm_f homogeneity and triangle inequality") {
  const Interval K(-1.0, 1.0);
  const SmoothExpr f = bump();
  const SmoothExpr g = intpow(variable(), 3);
  for (int m : {0, 1, 2}) {
    const double nf = norm_f(f, K, m);
    const double scaled = norm_f(prod({constant(-4.0), f}), K, m);
    CHECK(scaled == 4.0 * nf);
    const double tri = norm_f(f + g, K, m);
    CHECK(tri <= nf + norm_f(g, K, m) + 1e-12);
  }
}

TEST_CASE("norm_f is monotone in the window, the order, and the grid") {
  const SmoothExpr f = bump();
  const double inner = norm_f(f, Interval(0.3, 0.6), 1);
  const double outer = norm_f(f, Interval(0.0, 1.0), 1);
  CHECK(inner <= outer);
  CHECK(norm_f(f, Interval(0.0, 1.0), 0) <= norm_f(f, Interval(0.0, 1.0), 2));
  const double coarse = norm_f(f, Interval(-1.0, 1.0), 1, {128});
  const double fine = norm_f(f, Interval(-1.0, 1.0), 1, {1024});
  CHECK(coarse <= fine);
}

TEST_CASE("grid_nodes uses nested power-of-two refinement") {
  const Interval K(-1.0, 1.0);
  const auto a = grid_nodes(K, {512});
  const auto b = grid_nodes(K, {1024});
  CHECK(a.size() == 1025);
  CHECK(b.size() == 2049);
  CHECK(a.front() == -1.0);
  CHECK(a.back() == 1.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i] == b[2 * i]);
  }
  const auto d = grid_nodes(Interval(0.5, 0.5), {512});
  REQUIRE(d.size() == 1);
  CHECK(d[0] == 0.5);
  const auto small = grid_nodes(Interval(0.0, 0.1), {16});
  CHECK(small.size() == 3);
  CHECK_THROWS_AS(grid_nodes(Interval(0.0, 1.0), {3}), std::invalid_argument);
}

TEST_CASE("norm_kernel decays like -(m+l+1) in epsilon") {
  const KernelSpec spec = model_spec();
  const Interval K(-1.0, 1.0);
  const Interval L(-2.0, 2.0);
  for (int m : {0, 1, 2}) {
    for (int l : {0, 1}) {
      std::vector<double> eps, val;
      for (int i = 4; i <= 14; ++i) {
        eps.push_back(std::ldexp(1.0, -i));
        val.push_back(norm_kernel(spec, eps.back(), K, m, L, l));
      }
      const double slope = fit_slope(eps, val);
      CHECK(slope == doctest::Approx(-(m + l + 1.0)).epsilon(0.0005));
    }
  }
}

TEST_CASE("norm_kernel is nondecreasing in both derivative budgets") {
  const KernelSpec spec = model_spec();
  const Interval K(-1.0, 1.0);
  const Interval L(-2.0, 2.0);
  const double eps = 0.0625;
  double prev = 0.0;
  for (int m = 0; m <= 3; ++m) {
    const double v = norm_kernel(spec, eps, K, m, L, 0);
    CHECK(v >= prev);
    prev = v;
  }
  CHECK(norm_kernel(spec, eps, K, 0, L, 2) >= norm_kernel(spec, eps, K, 0, L, 0));
}

TEST_CASE("norm_kernel sees only the reachable kernel support") {
  const KernelSpec spec = model_spec();
  const double eps = 0.0625;
  const double near = norm_kernel(spec, eps, Interval(-1.0, 1.0), 0, Interval(-2.0, 2.0), 0);
  CHECK(near > 0.0);
  const double far = norm_kernel(spec, eps, Interval(-1.0, -0.5), 0, Interval(1.0, 2.0), 0);
  CHECK(far == 0.0);
}

TEST_CASE("norm_gap exact expansion matches the analytic monomial gap") {
  const Interval K(-1.0, 1.0);
  const GridSpec g{512};
  for (int q : {0, 1, 2}) {
    const Mollifier aq = q == 0 ? skew_bump() : synth_Aq(skew_bump(), q);
    KernelSpec spec{KernelKind::ScaledAq, aq, cutoff_s()};
    const double mu = aq.raw_moments[static_cast<std::size_t>(q + 1)];
    FunctionFamily B;
    B.members.push_back({intpow(variable(), q + 1), "x^" + std::to_string(q + 1)});
    for (double eps : {1e-1, 1e-2, 1e-3}) {
      const double got = norm_gap(spec, eps, K, 0, B, g);
      const double want = std::pow(eps, q + 1) * std::abs(mu);
      CHECK(got == doctest::Approx(want).epsilon(1e-6));
    }
  }
}

TEST_CASE("norm_gap annihilates polynomials up to degree q") {
  const Interval K(-1.0, 1.0);
  const int q = 2;
  const Mollifier aq = synth_Aq(skew_bump(), q);
  KernelSpec spec{KernelKind::ScaledAq, aq, cutoff_s()};
  for (int j = 1; j <= q; ++j) {
    FunctionFamily B;
    B.members.push_back({intpow(variable(), j), "x^" + std::to_string(j)});
    CHECK(norm_gap(spec, 0.05, K, 0, B) <= 1e-8);
  }
  // After snapping, the synthesized mass is exactly 1, so constants show no
  // gap on the exact path; the quadrature path sees only the raw-mass residue.
  FunctionFamily exact_one;
  exact_one.members.push_back({constant(1.0), "1"});
  CHECK(norm_gap(spec, 0.05, K, 0, exact_one) <= 1e-15);
  FunctionFamily quad_one;
  quad_one.members.push_back({Distribution::polynomial({1.0}), "1"});
  CHECK(norm_gap(spec, 0.05, K, 0, quad_one) <= 1e-9);
}

TEST_CASE("norm_gap decays like q+1 in epsilon") {
  for (int q : {0, 1, 2}) {
    const Mollifier aq = q == 0 ? skew_bump() : synth_Aq(skew_bump(), q);
    KernelSpec spec{KernelKind::ScaledAq, aq, cutoff_s()};
    FunctionFamily B;
    B.members.push_back({intpow(variable(), q + 1), "monomial"});
    std::vector<double> eps, val;
    for (int i = 4; i <= 12; ++i) {
      eps.push_back(std::ldexp(1.0, -i));
      val.push_back(norm_gap(spec, eps.back(), Interval(-1.0, 1.0), 0, B));
    }
    const double slope = fit_slope(eps, val);
    CHECK(slope == doctest::Approx(q + 1.0).epsilon(0.01));
  }
}

TEST_CASE("norm_gap quadrature path agrees with the exact expansion") {
  const Interval K(-0.5, 0.5);
  const Mollifier base = base_bump();
  KernelSpec model{KernelKind::Model, base, cutoff_s()};
  KernelSpec damped{KernelKind::LogDamped, base, cutoff_s()};
  FunctionFamily B;
  B.members.push_back({intpow(variable(), 2), "x^2"});
  for (double eps : {0.25, 0.125, 0.0625}) {
    const double exact = norm_gap(model, eps, K, 1, B);
    const double quad = norm_gap(damped, eps, K, 1, B);
    CHECK(quad == doctest::Approx(exact).epsilon(2e-6));
  }
}

TEST_CASE("norm_gap handles non-polynomial members by quadrature") {
  const KernelSpec spec = model_spec();
  FunctionFamily B;
  B.members.push_back({bump(), "bump"});
  const double eps = 0.125;
  const double got = norm_gap(spec, eps, Interval(-0.25, 0.25), 0, B);
  const double predicted = 0.5 * eps * eps * base_bump().moment(2) *
                           norm_f(bump().derive_n(2), Interval(-0.5, 0.5), 0, {2048});
  CHECK(got > 0.0);
  CHECK(got <= predicted * 1.05);
  CHECK(got >= predicted * 0.2);
}

TEST_CASE("positive polynomial validation") {
  PosPolynomial ok;
  ok.monomials.push_back({2.0, {1, 0}, {0, 1}});
  ok.validate();
  PosPolynomial neg;
  neg.monomials.push_back({-1.0, {1}, {0}});
  CHECK_THROWS_AS(neg.validate(), std::invalid_argument);
  PosPolynomial badexp;
  badexp.monomials.push_back({1.0, {-1}, {0}});
  CHECK_THROWS_AS(badexp.validate(), std::invalid_argument);
}

TEST_CASE("the ideal test looks for a z factor in every monomial") {
  PosPolynomial yz;
  yz.monomials.push_back({1.0, {1}, {1}});
  CHECK(in_Ik(yz, 0));

  PosPolynomial y_only;
  y_only.monomials.push_back({1.0, {1}, {0}});
  CHECK_FALSE(in_Ik(y_only, 0));

  PosPolynomial mixed;
  mixed.monomials.push_back({1.0, {1}, {0}});
  mixed.monomials.push_back({1.0, {0}, {2}});
  CHECK_FALSE(in_Ik(mixed, 0));

  PosPolynomial zero_coeff;
  zero_coeff.monomials.push_back({0.0, {1}, {0}});
  zero_coeff.monomials.push_back({1.0, {0}, {1}});
  CHECK(in_Ik(zero_coeff, 0));
}
