#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstring>
#include <vector>

#include "colombeau/errors.hpp"
#include "colombeau/mollifier.hpp"
#include "oracles.hpp"

using namespace colombeau;

namespace {

bool same_bits(double a, double b) {
  return std::memcmp(&a, &b, sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("base bump has unit mass and frozen even moments") {
  const Mollifier m = base_bump();
  CHECK(m.moment(0) == 1.0);
  CHECK(m.moment(1) == 0.0);
  CHECK(m.moment(3) == 0.0);
  CHECK(m.moment(5) == 0.0);
  CHECK(m.moment(2) == doctest::Approx(oracle::kMu2).epsilon(1e-13));
  CHECK(m.moment(4) == doctest::Approx(oracle::kMu4).epsilon(1e-13));
  CHECK(m.moment(6) == doctest::Approx(oracle::kMu6).epsilon(1e-13));
  CHECK(m.symmetric);
  CHECK(m.q == 1);
  CHECK(std::abs(m.raw_moments[0] - 1.0) < 1e-12);
  CHECK(std::abs(m.raw_moments[1]) < 1e-12);
}

TEST_CASE("skew bump keeps unit mass but gains a first moment") {
  const Mollifier m = skew_bump();
  CHECK(m.moment(0) == 1.0);
  CHECK(m.moment(1) == doctest::Approx(oracle::kSkewMu1).epsilon(1e-13));
  CHECK_FALSE(m.symmetric);
  CHECK(m.q == 0);
  CHECK(m.moment(2) == doctest::Approx(oracle::kMu2).epsilon(1e-13));
}

TEST_CASE("moments() re-integration agrees with stored raw moments") {
  for (const Mollifier& m : {base_bump(), skew_bump()}) {
    const std::vector<double> re = moments(m, 8);
    REQUIRE(re.size() == 9);
    for (int j = 0; j <= 8; ++j) {
      CHECK(std::abs(re[j] - m.raw_moments[j]) < 1e-11);
    }
  }
}

TEST_CASE("moment accessor bounds") {
  const Mollifier m = base_bump();
  CHECK_THROWS_AS(m.moment(-1), std::out_of_range);
  CHECK_THROWS_AS(m.moment(kMomentCount), std::out_of_range);
  CHECK_THROWS_AS(moments(m, -1), std::invalid_argument);
}

TEST_CASE("synth_Aq cancels moments 1..q for both bases") {
  for (const Mollifier& base : {base_bump(), skew_bump()}) {
    for (int q = 1; q <= 5; ++q) {
      const Mollifier aq = synth_Aq(base, q);
      CHECK(aq.q >= q);
      const std::vector<double> re = moments(aq, q + 1);
      CHECK(std::abs(re[0] - 1.0) < 1e-9);
      for (int j = 1; j <= q; ++j) {
        CHECK(std::abs(re[j]) < 1e-9);
      }
      // Parity can cancel moment q+1 for the even base; the skew base never does.
      if (!base.symmetric) {
        CHECK(std::abs(re[q + 1]) > 1e-9);
      }
    }
  }
}

TEST_CASE("synth_Aq degenerate and invalid orders") {
  const Mollifier base = base_bump();
  const Mollifier a0 = synth_Aq(base, 0);
  CHECK(a0.moment(0) == 1.0);
  CHECK_THROWS_AS(synth_Aq(base, -1), std::invalid_argument);
  CHECK_THROWS_AS(synth_Aq(base, 9), std::invalid_argument);
  CHECK_THROWS_AS(synth_Aq(base, 3, 1.0), IllConditioned);
}

TEST_CASE("A_q moments against an independent Simpson oracle") {
  const Mollifier aq = synth_Aq(skew_bump(), 2);
  for (int j = 0; j <= 3; ++j) {
    const double direct = oracle::composite_simpson(
        [&](double t) { return std::pow(t, j) * aq.expr.eval(t); }, aq.support.lo,
        aq.support.hi, 1 << 13);
    const double want = (j == 0) ? 1.0 : 0.0;
    if (j <= 2) {
      CHECK(std::abs(direct - want) < 1e-8);
    } else {
      CHECK(std::abs(direct) > 1e-6);
    }
  }
}

TEST_CASE("scaled profile has unit mass and sharpens") {
  const Mollifier m = base_bump();
  for (double eps : {1.0, 0.25, 0.0625}) {
    const SmoothExpr k = scale(m, eps);
    REQUIRE(k.support().has_value());
    CHECK(k.support()->lo == doctest::Approx(-eps));
    CHECK(k.support()->hi == doctest::Approx(eps));
    const double mass =
        integrate([&](double t) { return k.eval(t); }, *k.support(), {1e-12, 40});
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(k.eval(0.0) == doctest::Approx(m.expr.eval(0.0) / eps).epsilon(1e-15));
  }
  CHECK_THROWS_AS(scale(m, 0.0), BadEpsilon);
  CHECK_THROWS_AS(scale(m, 1.5), BadEpsilon);
  CHECK_THROWS_AS(scale(m, -0.25), BadEpsilon);
}

TEST_CASE("log damping is invisible once eps <= exp(-1)") {
  const Mollifier m = base_bump();
  const SmoothExpr chi = cutoff_s();
  for (double eps : {0.25, 0.0625, 0.001}) {
    const SmoothExpr plain = scale(m, eps);
    const SmoothExpr damped = log_damped(m, chi, eps);
    for (double t : {-0.9 * eps, -0.3 * eps, 0.0, 0.5 * eps, 0.99 * eps}) {
      CHECK(same_bits(plain.eval(t), damped.eval(t)));
    }
  }
  CHECK_THROWS_AS(log_damped(m, chi, 0.5), BadEpsilon);
}

TEST_CASE("log damped rejects an invalid chi") {
  const Mollifier m = base_bump();
  CHECK_THROWS_AS(log_damped(m, bump(), 0.1), std::invalid_argument);
  CHECK_THROWS_AS(log_damped(m, constant(0.5), 0.1), std::invalid_argument);
}

TEST_CASE("kernel spec epsilon admissibility per kind") {
  KernelSpec model{KernelKind::Model, base_bump(), cutoff_s()};
  KernelSpec damped{KernelKind::LogDamped, base_bump(), cutoff_s()};
  CHECK(model.max_eps() == 1.0);
  CHECK(damped.max_eps() == doctest::Approx(std::exp(-1.0)));
  CHECK_NOTHROW(kernel_profile(model, 0.5));
  CHECK_THROWS_AS(kernel_profile(model, 1.5), BadEpsilon);
  CHECK_THROWS_AS(kernel_profile(damped, 0.5), BadEpsilon);
  CHECK_NOTHROW(kernel_profile(damped, 0.25));
}

TEST_CASE("kernel orientation: s = +1 for model, -1 for log damped") {
  KernelSpec model{KernelKind::Model, base_bump(), cutoff_s()};
  KernelSpec damped{KernelKind::LogDamped, base_bump(), cutoff_s()};
  CHECK(kernel_profile(model, 0.25).s == 1);
  CHECK(kernel_profile(damped, 0.25).s == -1);

  const double eps = 0.25;
  const Kernel1D k = kernel_profile(model, eps);
  const SmoothExpr at = kernel_at(k, 0.3);
  const SmoothExpr ref = scale(base_bump(), eps);
  for (double y : {0.1, 0.3, 0.45}) {
    CHECK(at.eval(y) == doctest::Approx(ref.eval(y - 0.3)).epsilon(1e-15));
  }
}

TEST_CASE("kernel_at_dx matches a finite difference in x") {
  KernelSpec spec{KernelKind::Model, base_bump(), cutoff_s()};
  const Kernel1D k = kernel_profile(spec, 0.25);
  const double y = 0.05;
  const SmoothExpr d1 = kernel_at_dx(k, 0.0, 1);
  const double fd = oracle::central_diff1(
      [&](double x) { return kernel_at(k, x).eval(y); }, 0.0, 1e-6);
  CHECK(d1.eval(y) == doctest::Approx(fd).epsilon(1e-6));

  const SmoothExpr d2 = kernel_at_dx(k, 0.0, 2);
  const double fd2 = oracle::central_diff2(
      [&](double x) { return kernel_at(k, x).eval(y); }, 0.0, 1e-4);
  CHECK(d2.eval(y) == doctest::Approx(fd2).epsilon(1e-5));
}

TEST_CASE("scaled A_q kernel uses the synthesized density") {
  const Mollifier aq = synth_Aq(base_bump(), 2);
  KernelSpec spec{KernelKind::ScaledAq, aq, cutoff_s()};
  const double eps = 0.125;
  const Kernel1D k = kernel_profile(spec, eps);
  CHECK(k.s == 1);
  CHECK(k.g.eval(0.0) == doctest::Approx(aq.expr.eval(0.0) / eps).epsilon(1e-15));
}

TEST_CASE("kernel kind names") {
  CHECK(std::string(kernel_kind_name(KernelKind::Model)) == "model");
  CHECK(std::string(kernel_kind_name(KernelKind::LogDamped)) == "log_damped");
  CHECK(std::string(kernel_kind_name(KernelKind::ScaledAq)) == "scaled_aq");
}
