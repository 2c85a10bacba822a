#include "colombeau/seminorm.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>

#include "colombeau/errors.hpp"

namespace colombeau {

namespace {

std::size_t pow2ceil(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

void check_interval(const Interval& K, const char* who) {
  if (!std::isfinite(K.lo) || !std::isfinite(K.hi) || K.hi < K.lo) {
    throw std::invalid_argument(std::string(who) + ": interval must be finite with lo <= hi");
  }
}

std::vector<double> nodes_on(const Interval& dom, std::size_t intervals) {
  std::vector<double> out;
  out.reserve(intervals + 1);
  for (std::size_t i = 0; i <= intervals; ++i) {
    out.push_back(dom.lo + dom.width() * (static_cast<double>(i) / static_cast<double>(intervals)));
  }
  return out;
}

double grid_sup_abs(const SmoothExpr& f, const std::vector<double>& xs) {
  double best = 0.0;
  for (double x : xs) best = std::max(best, std::abs(f.eval(x)));
  return best;
}

// f^(d)(x) for the polynomial with coefficients p (ascending powers).
double poly_deriv_at(const std::vector<double>& p, int d, double x) {
  const int deg = static_cast<int>(p.size()) - 1;
  if (d > deg) return 0.0;
  double acc = 0.0;
  for (int j = deg; j >= d; --j) {
    double fall = 1.0;
    for (int i = 0; i < d; ++i) fall *= static_cast<double>(j - i);
    acc = acc * x + p[static_cast<std::size_t>(j)] * fall;
  }
  return acc;
}

}  // namespace

std::vector<double> grid_nodes(const Interval& K, const GridSpec& g) {
  check_interval(K, "grid_nodes");
  if (g.points_per_unit < 16) {
    throw std::invalid_argument("grid_nodes: points_per_unit must be >= 16");
  }
  if (K.degenerate()) return {K.lo};
  const double raw = std::ceil(K.width() * static_cast<double>(g.points_per_unit));
  const std::size_t intervals = pow2ceil(static_cast<std::size_t>(std::max(1.0, raw)));
  return nodes_on(K, intervals);
}

double norm_f(const SmoothExpr& f, const Interval& K, int m, const GridSpec& g) {
  if (m < 0) throw std::invalid_argument("norm_f: m must be >= 0");
  const std::vector<double> xs = grid_nodes(K, g);
  double best = 0.0;
  for (int j = 0; j <= m; ++j) {
    best = std::max(best, grid_sup_abs(f.derive_n(j), xs));
  }
  return best;
}

double norm_kernel(const KernelSpec& spec, double eps, const Interval& K, int m,
                   const Interval& L, int l, const GridSpec& g) {
  if (m < 0 || l < 0) throw std::invalid_argument("norm_kernel: m and l must be >= 0");
  check_interval(K, "norm_kernel");
  check_interval(L, "norm_kernel");
  if (g.points_per_unit < 16) {
    throw std::invalid_argument("norm_kernel: points_per_unit must be >= 16");
  }
  const Kernel1D k = kernel_profile(spec, eps);

  const Interval reach = k.s > 0 ? Interval{L.lo - K.hi, L.hi - K.lo}
                                 : Interval{K.lo - L.hi, K.hi - L.lo};
  Interval dom = reach;
  if (auto supp = k.g.support()) {
    auto clipped = intersect(dom, *supp);
    if (!clipped) return 0.0;
    dom = *clipped;
  }
  if (dom.degenerate()) {
    double best = 0.0;
    for (int d = 0; d <= m + l; ++d) {
      best = std::max(best, std::abs(k.g.derive_n(d).eval(dom.lo)));
    }
    return best;
  }
  const std::size_t intervals =
      std::max<std::size_t>(kKernelGridIntervals,
                            pow2ceil(2 * static_cast<std::size_t>(g.points_per_unit)));
  const std::vector<double> ts = nodes_on(dom, intervals);
  double best = 0.0;
  for (int d = 0; d <= m + l; ++d) {
    best = std::max(best, grid_sup_abs(k.g.derive_n(d), ts));
  }
  return best;
}

double norm_gap(const KernelSpec& spec, double eps, const Interval& K, int c,
                const FunctionFamily& B, const GridSpec& g, const QuadConfig& cfg) {
  if (c < 0) throw std::invalid_argument("norm_gap: c must be >= 0");
  B.validate();
  const Kernel1D k = kernel_profile(spec, eps);
  const std::vector<double> xs = grid_nodes(K, g);
  const bool moment_kernel =
      spec.kind == KernelKind::Model || spec.kind == KernelKind::ScaledAq;

  double best = 0.0;
  for (const FunctionFamily::Member& mem : B.members) {
    std::optional<std::vector<double>> poly;
    if (const SmoothExpr* f = std::get_if<SmoothExpr>(&mem.fn)) {
      poly = to_polynomial(*f);
      if (poly && static_cast<int>(poly->size()) > kMomentCount) poly.reset();
    }
    for (int a = 0; a <= c; ++a) {
      if (moment_kernel && poly) {
        const int deg = static_cast<int>(poly->size()) - 1;
        std::vector<double> scaled_mu(static_cast<std::size_t>(std::max(0, deg - a)) + 1, 0.0);
        double epow = 1.0;
        for (int i = 1; i + a <= deg; ++i) {
          epow *= eps;
          scaled_mu[static_cast<std::size_t>(i)] = epow * spec.base.moment(i);
        }
        double ifac = 1.0;
        for (double x : xs) {
          double gap = 0.0;
          ifac = 1.0;
          for (int i = 1; i + a <= deg; ++i) {
            ifac *= static_cast<double>(i);
            const double mu = scaled_mu[static_cast<std::size_t>(i)];
            if (mu == 0.0) continue;
            gap += poly_deriv_at(*poly, a + i, x) * mu / ifac;
          }
          best = std::max(best, std::abs(gap));
        }
        continue;
      }
      for (double x : xs) {
        const SmoothExpr ka = kernel_at_dx(k, x, a);
        const auto ks = ka.support();
        if (!ks) throw std::logic_error("norm_gap: kernel section lost its support");
        double paired = 0.0;
        if (const SmoothExpr* f = std::get_if<SmoothExpr>(&mem.fn)) {
          Interval dom = *ks;
          if (auto fs = f->support()) {
            auto clipped = intersect(dom, *fs);
            if (!clipped) {
              best = std::max(best, std::abs(member_value(mem, x, a)));
              continue;
            }
            dom = *clipped;
          }
          paired = integrate([f, &ka](double y) { return f->eval(y) * ka.eval(y); }, dom, cfg);
        } else {
          paired = pair(std::get<Distribution>(mem.fn), ka, cfg);
        }
        best = std::max(best, std::abs(paired - member_value(mem, x, a)));
      }
    }
  }
  return best;
}

void PosPolynomial::validate() const {
  for (const PosMonomial& m : monomials) {
    if (!std::isfinite(m.coeff) || m.coeff < 0.0) {
      throw std::invalid_argument("PosPolynomial: coefficients must be finite and >= 0");
    }
    for (int e : m.y_exps) {
      if (e < 0) throw std::invalid_argument("PosPolynomial: exponents must be >= 0");
    }
    for (int e : m.z_exps) {
      if (e < 0) throw std::invalid_argument("PosPolynomial: exponents must be >= 0");
    }
  }
}

bool in_Ik(const PosPolynomial& lambda, int k) {
  if (k < 0) throw std::invalid_argument("in_Ik: k must be >= 0");
  lambda.validate();
  for (const PosMonomial& m : lambda.monomials) {
    if (static_cast<int>(m.y_exps.size()) > k + 1 ||
        static_cast<int>(m.z_exps.size()) > k + 1) {
      throw std::invalid_argument("in_Ik: monomial uses variables beyond index k");
    }
    if (m.coeff == 0.0) continue;
    bool has_z = false;
    for (int e : m.z_exps) {
      if (e > 0) {
        has_z = true;
        break;
      }
    }
    if (!has_z) return false;
  }
  return true;
}

}  // namespace colombeau
