#include "colombeau/mollifier.hpp"

#include <cmath>
#include <stdexcept>

#include "colombeau/errors.hpp"

namespace colombeau {

double Mollifier::moment(int j) const {
  if (j < 0 || j >= static_cast<int>(moments.size())) {
    throw std::out_of_range("Mollifier::moment: index out of range");
  }
  return moments[static_cast<std::size_t>(j)];
}

std::vector<double> compute_moments(const SmoothExpr& rho, const Interval& supp, int count,
                                    double quad_tol) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  QuadConfig cfg;
  cfg.abs_tol = quad_tol;
  cfg.max_depth = 48;
  for (int j = 0; j < count; ++j) {
    out.push_back(integrate(
        [&rho, j](double t) {
          double p = 1.0;
          for (int i = 0; i < j; ++i) p *= t;
          return p * rho.eval(t);
        },
        supp, cfg));
  }
  return out;
}

std::vector<double> moments(const Mollifier& m, int J) {
  if (J < 0) throw std::invalid_argument("moments: J must be >= 0");
  return compute_moments(m.expr, m.support, J + 1);
}

namespace {

bool detect_symmetric(const SmoothExpr& rho, const Interval& supp) {
  const int n = 64;
  for (int i = 0; i <= n; ++i) {
    const double t = supp.lo + supp.width() * i / n;
    const double a = rho.eval(t);
    const double b = rho.eval(-t);
    if (std::abs(a - b) > 1e-12 * std::max(1.0, std::abs(a))) return false;
  }
  return true;
}

SmoothExpr poly_expr(const std::vector<double>& c) {
  std::vector<SmoothExpr> terms;
  terms.reserve(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    terms.push_back(prod({constant(c[i]), intpow(variable(), static_cast<int>(i))}));
  }
  return sum(std::move(terms));
}

}  // namespace

Mollifier make_mollifier(std::string name, const SmoothExpr& rho, const Interval& supp,
                         double moment_tol) {
  Mollifier m;
  m.name = std::move(name);
  m.expr = rho;
  m.support = supp;
  m.raw_moments = compute_moments(rho, supp, kMomentCount);
  m.moments = m.raw_moments;
  if (std::abs(m.moments[0] - 1.0) <= moment_tol) m.moments[0] = 1.0;
  for (std::size_t j = 1; j < m.moments.size(); ++j) {
    if (std::abs(m.moments[j]) <= moment_tol) m.moments[j] = 0.0;
  }
  m.q = -1;
  if (m.moments[0] == 1.0) {
    m.q = 0;
    while (m.q + 1 < static_cast<int>(m.moments.size()) &&
           m.moments[static_cast<std::size_t>(m.q + 1)] == 0.0) {
      ++m.q;
    }
  }
  m.symmetric = detect_symmetric(rho, supp);
  return m;
}

Mollifier base_bump() {
  QuadConfig cfg;
  cfg.abs_tol = 1e-14;
  cfg.max_depth = 48;
  const SmoothExpr b = bump();
  const double i0 = integrate([&b](double t) { return b.eval(t); }, Interval(-1.0, 1.0), cfg);
  const SmoothExpr rho = prod({constant(1.0 / i0), bump()});
  return make_mollifier("bump", rho, Interval(-1.0, 1.0));
}

Mollifier skew_bump() {
  QuadConfig cfg;
  cfg.abs_tol = 1e-14;
  cfg.max_depth = 48;
  const SmoothExpr b = bump();
  const double i0 = integrate([&b](double t) { return b.eval(t); }, Interval(-1.0, 1.0), cfg);
  const SmoothExpr rho =
      prod({constant(1.0 / i0), bump(),
            sum({constant(1.0), prod({constant(0.5), variable()})})});
  return make_mollifier("skew-bump", rho, Interval(-1.0, 1.0));
}

Mollifier synth_Aq(const Mollifier& base, int q, double cond_limit, double moment_tol) {
  if (q < 0 || 2 * q >= kMomentCount) {
    throw std::invalid_argument("synth_Aq: q out of supported range");
  }
  const int n = q + 1;
  std::vector<std::vector<double>> M(static_cast<std::size_t>(n),
                                     std::vector<double>(static_cast<std::size_t>(n + 1), 0.0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      M[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          base.raw_moments[static_cast<std::size_t>(i + j)];
    }
    M[static_cast<std::size_t>(i)][static_cast<std::size_t>(n)] = i == 0 ? 1.0 : 0.0;
  }
  double max_pivot = 0.0;
  double min_pivot = HUGE_VAL;
  for (int col = 0; col < n; ++col) {
    int best = col;
    for (int r = col + 1; r < n; ++r) {
      if (std::abs(M[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)]) >
          std::abs(M[static_cast<std::size_t>(best)][static_cast<std::size_t>(col)])) {
        best = r;
      }
    }
    std::swap(M[static_cast<std::size_t>(col)], M[static_cast<std::size_t>(best)]);
    const double pivot = M[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)];
    if (pivot == 0.0) throw IllConditioned("synth_Aq: singular moment matrix");
    max_pivot = std::max(max_pivot, std::abs(pivot));
    min_pivot = std::min(min_pivot, std::abs(pivot));
    for (int r = col + 1; r < n; ++r) {
      const double f = M[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] / pivot;
      if (f == 0.0) continue;
      for (int c = col; c <= n; ++c) {
        M[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] -=
            f * M[static_cast<std::size_t>(col)][static_cast<std::size_t>(c)];
      }
    }
  }
  if (max_pivot / min_pivot > cond_limit) {
    throw IllConditioned("synth_Aq: moment matrix condition estimate exceeds limit");
  }
  std::vector<double> c(static_cast<std::size_t>(n), 0.0);
  for (int r = n - 1; r >= 0; --r) {
    double s = M[static_cast<std::size_t>(r)][static_cast<std::size_t>(n)];
    for (int j = r + 1; j < n; ++j) {
      s -= M[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] *
           c[static_cast<std::size_t>(j)];
    }
    c[static_cast<std::size_t>(r)] = s / M[static_cast<std::size_t>(r)][static_cast<std::size_t>(r)];
  }
  const SmoothExpr rho = prod({poly_expr(c), base.expr});
  Mollifier out =
      make_mollifier(base.name + "+A" + std::to_string(q), rho, base.support, moment_tol);
  if (std::abs(out.raw_moments[0] - 1.0) > moment_tol) {
    throw std::runtime_error("synth_Aq: mass verification failed");
  }
  for (int j = 1; j <= q; ++j) {
    if (std::abs(out.raw_moments[static_cast<std::size_t>(j)]) > moment_tol) {
      throw std::runtime_error("synth_Aq: vanishing-moment verification failed");
    }
  }
  return out;
}

const char* kernel_kind_name(KernelKind k) {
  switch (k) {
    case KernelKind::Model:
      return "model";
    case KernelKind::LogDamped:
      return "log_damped";
    case KernelKind::ScaledAq:
      return "scaled_aq";
  }
  return "?";
}

double KernelSpec::max_eps() const {
  return kind == KernelKind::LogDamped ? std::exp(-1.0) : 1.0;
}

SmoothExpr scaled_profile(const SmoothExpr& rho, double eps) {
  if (!(eps > 0.0) || !(eps <= 1.0) || !std::isfinite(eps)) {
    throw BadEpsilon("scaled_profile: eps must lie in (0, 1]");
  }
  return prod({constant(1.0 / eps), affine(1.0 / eps, 0.0, rho)});
}

SmoothExpr log_damped_profile(const SmoothExpr& rho, const SmoothExpr& chi, double eps) {
  if (!(eps > 0.0) || !(eps <= std::exp(-1.0)) || !std::isfinite(eps)) {
    throw BadEpsilon("log_damped_profile: eps must lie in (0, exp(-1)]");
  }
  const auto supp = chi.support();
  if (!supp || supp->lo < -2.0 - 1e-9 || supp->hi > 2.0 + 1e-9) {
    throw std::invalid_argument("log_damped_profile: cutoff support must lie in [-2, 2]");
  }
  for (int i = 0; i <= 32; ++i) {
    const double t = -1.0 + 2.0 * i / 32.0;
    if (std::abs(chi.eval(t) - 1.0) > 1e-12) {
      throw std::invalid_argument("log_damped_profile: cutoff must equal 1 on [-1, 1]");
    }
  }
  const double L = -std::log(eps);
  return prod({affine(L, 0.0, chi), constant(1.0 / eps), affine(1.0 / eps, 0.0, rho)});
}

SmoothExpr scale(const Mollifier& m, double eps) { return scaled_profile(m.expr, eps); }

SmoothExpr log_damped(const Mollifier& rho, const SmoothExpr& chi, double eps) {
  return log_damped_profile(rho.expr, chi, eps);
}

Kernel1D kernel_profile(const KernelSpec& spec, double eps) {
  switch (spec.kind) {
    case KernelKind::Model:
    case KernelKind::ScaledAq:
      return Kernel1D{scaled_profile(spec.base.expr, eps), 1};
    case KernelKind::LogDamped:
      return Kernel1D{log_damped_profile(spec.base.expr, spec.cutoff, eps), -1};
  }
  throw std::logic_error("kernel_profile: unknown kind");
}

SmoothExpr kernel_at(const Kernel1D& k, double x) {
  const double s = static_cast<double>(k.s);
  return affine(s, -s * x, k.g);
}

SmoothExpr kernel_at(const KernelSpec& spec, double eps, double x) {
  return kernel_at(kernel_profile(spec, eps), x);
}

SmoothExpr kernel_at_dx(const Kernel1D& k, double x, int alpha) {
  if (alpha < 0) throw std::invalid_argument("kernel_at_dx: alpha must be >= 0");
  const double s = static_cast<double>(k.s);
  const double sign = alpha % 2 == 0 ? 1.0 : -s;
  return prod({constant(sign), affine(s, -s * x, k.g.derive_n(alpha))});
}

}  // namespace colombeau
