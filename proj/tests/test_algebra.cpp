#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <vector>

#include "colombeau/algebra.hpp"
#include "oracles.hpp"

using namespace colombeau;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

KernelSpec model_spec() { return {KernelKind::Model, base_bump(), cutoff_s()}; }

}  // namespace

TEST_CASE("realizing an embedded delta reproduces the scaled kernel") {
  const KernelSpec spec = model_spec();
  const double eps = 0.125;
  const SmoothExpr got = realize(Representative::iota(Distribution::dirac()), spec, eps);
  const SmoothExpr want = scale(spec.base, eps);
  for (double x : {-0.1, -0.03, 0.0, 0.05, 0.11}) {
    CHECK(got.eval(x) == want.eval(x));
  }
}

TEST_CASE("realizing a shifted delta translates the section") {
  const KernelSpec spec = model_spec();
  const double eps = 0.125;
  const SmoothExpr got =
      realize(Representative::iota(Distribution::dirac(0.25)), spec, eps);
  const SmoothExpr want = scale(spec.base, eps);
  for (double x : {0.15, 0.25, 0.3}) {
    CHECK(got.eval(x) == doctest::Approx(want.eval(x - 0.25)).epsilon(1e-14));
  }
}

TEST_CASE("sigma embedding is the identity on smooth functions") {
  const KernelSpec spec = model_spec();
  const SmoothExpr f = sum({intpow(variable(), 2), constant(-1.0)});
  const SmoothExpr got = realize(Representative::sigma(f), spec, 0.0625);
  for (double x : {-2.0, -0.5, 0.0, 1.5}) {
    CHECK(got.eval(x) == f.eval(x));
  }
}

TEST_CASE("deriv of embedded delta equals embedded delta-prime") {
  const KernelSpec spec = model_spec();
  const double eps = 0.125;
  const SmoothExpr a =
      realize(Representative::deriv(Representative::iota(Distribution::dirac()), 1), spec, eps);
  const SmoothExpr b =
      realize(Representative::iota(Distribution::dirac(0.0, 1)), spec, eps);
  for (double x : {-0.1, -0.02, 0.04, 0.09}) {
    CHECK(a.eval(x) == doctest::Approx(b.eval(x)).epsilon(1e-13));
  }
}

TEST_CASE("embedded piecewise data against direct nested quadrature") {
  const KernelSpec spec = model_spec();
  const double eps = 0.25;
  const Distribution u =
      Distribution::piecewise({{-kInf, 0.0, {0.0, -1.0}}, {0.0, kInf, {0.0, 1.0}}});
  const SmoothExpr emb = realize(Representative::iota(u), spec, eps, {1e-11, 40});
  const Kernel1D k = kernel_profile(spec, eps);
  for (double x : {-0.4, -0.1, 0.0, 0.07, 0.33}) {
    const SmoothExpr window = kernel_at(k, x);
    const double direct = pair(u, window, {1e-12, 48});
    CHECK(emb.eval(x) == doctest::Approx(direct).epsilon(1e-9));
  }
}

TEST_CASE("embedded smooth data converges to the function") {
  const KernelSpec spec = model_spec();
  const Distribution u = Distribution::piecewise({{-kInf, kInf, {0.0, 0.0, 1.0}}});
  const Representative rep = Representative::iota(u);
  const double x = 0.3;
  double prev = kInf;
  for (double eps : {0.25, 0.125, 0.0625}) {
    const double dev = std::abs(realize(rep, spec, eps).eval(x) - x * x);
    CHECK(dev < prev);
    prev = dev;
  }
  CHECK(prev < 1e-3);
}

TEST_CASE("pair_realized splits top-level sums and clips supports") {
  const KernelSpec spec = model_spec();
  const double eps = 0.125;
  const Representative rep = Representative::sum(
      {Representative::iota(Distribution::dirac()), Representative::sigma(variable())});
  const SmoothExpr realized = realize(rep, spec, eps);
  const SmoothExpr probe = bump();
  const double got = pair_realized(realized, probe, {1e-11, 40});
  const double d_part = pair_realized(
      realize(Representative::iota(Distribution::dirac()), spec, eps), probe, {1e-11, 40});
  const double x_part =
      integrate([&](double y) { return y * probe.eval(y); }, Interval(-1.0, 1.0), {1e-11, 40});
  CHECK(got == doctest::Approx(d_part + x_part).epsilon(1e-9));
}

TEST_CASE("theta pairing of an embedded delta samples the probe at scale eps") {
  const KernelSpec spec = model_spec();
  const Representative rep = Representative::iota(Distribution::dirac());
  const SmoothExpr probe = bump();
  const double v = theta_pairing(rep, spec, 0.0625, probe);
  const double direct = integrate(
      [&](double y) { return scale(spec.base, 0.0625).eval(y) * probe.eval(y); },
      Interval(-0.0625, 0.0625), {1e-12, 48});
  CHECK(v == doctest::Approx(direct).epsilon(1e-9));
  CHECK(std::abs(v - probe.eval(0.0)) < 1e-2);
}

TEST_CASE("theta pairing is translation covariant for dirac embeddings") {
  const KernelSpec spec = model_spec();
  const double eps = 0.0625;
  const SmoothExpr probe = affine(2.0, -0.6, bump());
  const QuadConfig cfg{1e-12, 48};
  const double at_zero = theta_pairing(
      Representative::iota(Distribution::dirac(0.0)), spec, eps, probe, cfg);
  const SmoothExpr shifted_probe = affine(2.0, -1.2, bump());
  const double at_shift = theta_pairing(
      Representative::iota(Distribution::dirac(0.3)), spec, eps, shifted_probe, cfg);
  CHECK(at_shift == doctest::Approx(at_zero).epsilon(1e-9));
}

TEST_CASE("theta pairing is linear in the representative") {
  const KernelSpec spec = model_spec();
  const double eps = 0.125;
  const SmoothExpr probe = bump();
  const Representative a = Representative::iota(Distribution::dirac());
  const Representative b = Representative::sigma(intpow(variable(), 2));
  const Representative both = Representative::sum({a, b});
  const QuadConfig cfg{1e-11, 40};
  const double va = theta_pairing(a, spec, eps, probe, cfg);
  const double vb = theta_pairing(b, spec, eps, probe, cfg);
  const double vab = theta_pairing(both, spec, eps, probe, cfg);
  CHECK(std::abs(vab - (va + vb)) < 2e-11);
}

TEST_CASE("H times delta pairs to half the probe value in the limit") {
  const KernelSpec spec = model_spec();
  const Representative rep = Representative::prod(
      {Representative::iota(Distribution::heaviside()),
       Representative::iota(Distribution::dirac())});
  const SmoothExpr probe = bump();
  double prev_err = kInf;
  for (double eps : {0.0625, 0.03125, 0.015625}) {
    const double v = theta_pairing(rep, spec, eps, probe, {1e-11, 40});
    const double err = std::abs(v - 0.5 * probe.eval(0.0));
    CHECK(err < prev_err);
    prev_err = err;
  }
  CHECK(prev_err < 1e-4);
}

TEST_CASE("squared delta grows like the kernel peak") {
  const KernelSpec spec = model_spec();
  const Representative rep =
      Representative::intpow(Representative::iota(Distribution::dirac()), 2);
  const SmoothExpr probe = bump();
  const double v1 = theta_pairing(rep, spec, 0.125, probe, {1e-11, 40});
  const double v2 = theta_pairing(rep, spec, 0.0625, probe, {1e-11, 40});
  CHECK(v2 / v1 == doctest::Approx(2.0).epsilon(0.02));
}

TEST_CASE("describe renders the algebra tree") {
  const Representative rep = Representative::prod(
      {Representative::sigma(variable()),
       Representative::iota(Distribution::dirac())});
  const std::string s = rep.describe();
  CHECK(s.find("iota(delta)") != std::string::npos);
  CHECK(s.find("x") != std::string::npos);
  CHECK(Representative::deriv(Representative::iota(Distribution::dirac()), 2).describe() ==
        "d^2(iota(delta))");
}

TEST_CASE("constructor validation") {
  CHECK_THROWS_AS(Representative::sum({}), std::invalid_argument);
  CHECK_THROWS_AS(Representative::prod({}), std::invalid_argument);
  CHECK_THROWS_AS(
      Representative::intpow(Representative::iota(Distribution::dirac()), -1),
      std::invalid_argument);
  CHECK_THROWS_AS(
      Representative::deriv(Representative::iota(Distribution::dirac()), -1),
      std::invalid_argument);
  const Representative base = Representative::iota(Distribution::dirac());
  CHECK(Representative::deriv(base, 0).kind() == RepKind::Iota);
  CHECK(Representative::sum({base}).kind() == RepKind::Iota);
  CHECK(Representative::prod({base}).kind() == RepKind::Iota);
  const KernelSpec spec = model_spec();
  const SmoothExpr one = realize(Representative::intpow(base, 0), spec, 0.125);
  CHECK(one.eval(0.4) == 1.0);
}
