#include "colombeau/algebra.hpp"

#include <cmath>
#include <stdexcept>

namespace colombeau {

Representative Representative::iota(Distribution u) {
  Representative r;
  r.kind_ = RepKind::Iota;
  r.dist_ = std::move(u);
  return r;
}

Representative Representative::sigma(SmoothExpr f) {
  Representative r;
  r.kind_ = RepKind::Sigma;
  r.smooth_ = std::move(f);
  return r;
}

Representative Representative::sum(std::vector<Representative> children) {
  if (children.empty()) throw std::invalid_argument("Representative::sum: empty");
  if (children.size() == 1) return children[0];
  Representative r;
  r.kind_ = RepKind::Sum;
  r.children_ = std::move(children);
  return r;
}

Representative Representative::prod(std::vector<Representative> children) {
  if (children.empty()) throw std::invalid_argument("Representative::prod: empty");
  if (children.size() == 1) return children[0];
  Representative r;
  r.kind_ = RepKind::Prod;
  r.children_ = std::move(children);
  return r;
}

Representative Representative::intpow(Representative base, int k) {
  if (k < 0) throw std::invalid_argument("Representative::intpow: exponent must be >= 0");
  Representative r;
  r.kind_ = RepKind::IntPow;
  r.children_ = {std::move(base)};
  r.k_ = k;
  return r;
}

Representative Representative::deriv(Representative child, int m) {
  if (m < 0) throw std::invalid_argument("Representative::deriv: order must be >= 0");
  if (m == 0) return child;
  Representative r;
  r.kind_ = RepKind::Deriv;
  r.children_ = {std::move(child)};
  r.k_ = m;
  return r;
}

std::string Representative::describe() const {
  switch (kind_) {
    case RepKind::Iota:
      return "iota(" + dist_.describe() + ")";
    case RepKind::Sigma:
      return "sigma(" + render_smooth(smooth_) + ")";
    case RepKind::Sum: {
      std::string s;
      for (std::size_t i = 0; i < children_.size(); ++i) {
        if (i) s += " + ";
        s += children_[i].describe();
      }
      return s;
    }
    case RepKind::Prod: {
      std::string s;
      for (std::size_t i = 0; i < children_.size(); ++i) {
        if (i) s += "*";
        const std::string c = children_[i].describe();
        s += children_[i].kind() == RepKind::Sum ? "(" + c + ")" : c;
      }
      return s;
    }
    case RepKind::IntPow: {
      const std::string c = children_[0].describe();
      const bool atom = children_[0].kind() == RepKind::Iota || children_[0].kind() == RepKind::Sigma;
      return (atom ? c : "(" + c + ")") + "^" + std::to_string(k_);
    }
    case RepKind::Deriv:
      return "d^" + std::to_string(k_) + "(" + children_[0].describe() + ")";
  }
  return "?";
}

namespace {

// Shared per-profile state for one kernel profile g: its derivative chain,
// its base moments int t^m g(t) dt, and prefix tables for the partial
// moments P_m(tau) = int_{glo}^{tau} t^m g(t) dt.  Everything here is
// quadrature-derived; the tables just stop the same integrals from being
// recomputed at every evaluation point.
class ProfileData {
 public:
  ProfileData(SmoothExpr g, int max_deg, QuadConfig cfg)
      : cfg_(cfg), max_deg_(max_deg), derivs_{std::move(g)} {
    const auto gs = derivs_[0].support();
    if (!gs) throw std::invalid_argument("ProfileData: profile must have compact support");
    supp_ = *gs;
    QuadConfig mc = cfg_;
    mc.max_depth = 48;
    for (int m = 0; m <= max_deg_; ++m) {
      const SmoothExpr& g0 = derivs_[0];
      moments_.push_back(integrate(
          [&g0, m](double t) {
            double p = 1.0;
            for (int i = 0; i < m; ++i) p *= t;
            return p * g0.eval(t);
          },
          supp_, mc));
    }
  }

  const Interval& supp() const { return supp_; }
  double moment(int m) const { return moments_[static_cast<std::size_t>(m)]; }

  const SmoothExpr& deriv(int d) {
    while (static_cast<int>(derivs_.size()) <= d) derivs_.push_back(derivs_.back().derive());
    return derivs_[static_cast<std::size_t>(d)];
  }

  // P_m(tau) from a 1024-panel prefix table plus an adaptive tail over the
  // final partial panel.
  double partial_moment(int m, double tau) {
    if (tau <= supp_.lo) return 0.0;
    if (tau >= supp_.hi) return moment(m);
    if (prefix_.empty()) build_tables();
    const double h = supp_.width() / kPanels;
    int i = static_cast<int>((tau - supp_.lo) / h);
    i = std::min(std::max(i, 0), kPanels - 1);
    const double node = supp_.lo + i * h;
    const auto& row = prefix_[static_cast<std::size_t>(m)];
    double tail = 0.0;
    if (tau > node) {
      const SmoothExpr& g0 = derivs_[0];
      QuadConfig tc = cfg_;
      tc.abs_tol = cfg_.abs_tol / kPanels;
      tail = integrate(
          [&g0, m](double t) {
            double p = 1.0;
            for (int i2 = 0; i2 < m; ++i2) p *= t;
            return p * g0.eval(t);
          },
          Interval(node, tau), tc);
    }
    return row[static_cast<std::size_t>(i)] + tail;
  }

 private:
  static constexpr int kPanels = 1024;

  void build_tables() {
    const double h = supp_.width() / kPanels;
    QuadConfig tc = cfg_;
    tc.abs_tol = cfg_.abs_tol / kPanels;
    const SmoothExpr& g0 = derivs_[0];
    prefix_.assign(static_cast<std::size_t>(max_deg_) + 1,
                   std::vector<double>(kPanels + 1, 0.0));
    for (int m = 0; m <= max_deg_; ++m) {
      auto& row = prefix_[static_cast<std::size_t>(m)];
      for (int i = 0; i < kPanels; ++i) {
        const double a = supp_.lo + i * h;
        const double b = i + 1 == kPanels ? supp_.hi : supp_.lo + (i + 1) * h;
        row[static_cast<std::size_t>(i + 1)] =
            row[static_cast<std::size_t>(i)] +
            integrate(
                [&g0, m](double t) {
                  double p = 1.0;
                  for (int i2 = 0; i2 < m; ++i2) p *= t;
                  return p * g0.eval(t);
                },
                Interval(a, b), tc);
      }
    }
  }

  QuadConfig cfg_;
  int max_deg_;
  std::vector<SmoothExpr> derivs_;
  Interval supp_;
  std::vector<double> moments_;
  std::vector<std::vector<double>> prefix_;
};

// iota(u) for piecewise-polynomial u: x -> sign * <u_y, g^(d)(s(y-x))>.
// Each piece section reduces, after the substitution t = s(y-x), to
// integrals I(j, d) = int t^j g^(d)(t) dt.  Over the full kernel window
// these are exact expressions in the base moments; over a cut window they
// reduce by parts to boundary evaluations of lower-order derivatives plus
// order-0 partial moments.
class PPMollified : public MollifiedEval {
 public:
  PPMollified(Distribution u, std::shared_ptr<ProfileData> pd, int s, double sign, int dx)
      : u_(std::move(u)), pd_(std::move(pd)), s_(s), sign_(sign), dx_(dx) {
    const Interval& gs = pd_->supp();
    m1_ = s_ > 0 ? gs.lo : -gs.hi;
    m2_ = s_ > 0 ? gs.hi : -gs.lo;

    bool unbounded = false;
    std::optional<Interval> hull_iv;
    auto add_region = [&hull_iv](const Interval& iv) {
      hull_iv = hull_iv ? hull(*hull_iv, iv) : iv;
    };
    for (const Piece& p : u_.pieces()) {
      bool nonconst = false;
      bool nonzero = false;
      for (std::size_t i = 0; i < p.coeffs.size(); ++i) {
        if (p.coeffs[i] != 0.0) {
          nonzero = true;
          if (i > 0) nonconst = true;
        }
      }
      if ((dx_ == 0 && nonzero) || nonconst) {
        if (std::isinf(p.lo) || std::isinf(p.hi)) {
          unbounded = true;
          break;
        }
        add_region(Interval(p.lo - m2_, p.hi - m1_));
      }
      if (dx_ > 0) {
        if (std::isfinite(p.lo)) add_region(Interval(p.lo - m2_, p.lo - m1_));
        if (std::isfinite(p.hi)) add_region(Interval(p.hi - m2_, p.hi - m1_));
      }
    }
    if (!unbounded) support_ = hull_iv ? *hull_iv : Interval(0.0, 0.0);
  }

  double eval(double x) const override {
    double total = 0.0;
    for (const Piece& p : u_.pieces()) {
      const double ylo = std::max(p.lo, x + m1_);
      const double yhi = std::min(p.hi, x + m2_);
      if (!(ylo < yhi)) continue;
      const bool full = p.lo <= x + m1_ && x + m2_ <= p.hi;
      double t1 = 0.0, t2 = 0.0;
      if (!full) {
        if (s_ > 0) {
          t1 = ylo - x;
          t2 = yhi - x;
        } else {
          t1 = x - yhi;
          t2 = x - ylo;
        }
      }
      const int deg = static_cast<int>(p.coeffs.size()) - 1;
      for (int j = 0; j <= deg; ++j) {
        double a = 0.0;
        double binom = 1.0;  // C(i, j) grown incrementally from i = j
        double xpow = 1.0;
        for (int i = j; i <= deg; ++i) {
          if (i > j) {
            binom = binom * i / (i - j);
            xpow *= x;
          }
          a += p.coeffs[static_cast<std::size_t>(i)] * binom * xpow;
        }
        if (a == 0.0) continue;
        if (j % 2 == 1 && s_ < 0) a = -a;
        total += a * (full ? full_integral(j, dx_) : cut_integral(j, dx_, t1, t2));
      }
    }
    return sign_ * total;
  }

  std::optional<Interval> support() const override { return support_; }

  std::shared_ptr<const MollifiedEval> derivative() const override {
    return std::make_shared<PPMollified>(u_, pd_, s_, sign_ * -static_cast<double>(s_), dx_ + 1);
  }

  std::string describe() const override {
    const std::string base = "iota(" + u_.describe() + ")";
    return dx_ == 0 ? base : "d^" + std::to_string(dx_) + "(" + base + ")";
  }

 private:
  // int over the whole support of t^j g^(d)(t): zero for d > j, otherwise
  // (-1)^d j!/(j-d)! M_{j-d}.
  double full_integral(int j, int d) const {
    if (d > j) return 0.0;
    double f = 1.0;
    for (int t = j - d + 1; t <= j; ++t) f *= t;
    if (d % 2 == 1) f = -f;
    return f * pd_->moment(j - d);
  }

  // int_{t1}^{t2} t^j g^(d)(t) dt by parts until d = 0.
  double cut_integral(int j, int d, double t1, double t2) const {
    if (d == 0) return pd_->partial_moment(j, t2) - pd_->partial_moment(j, t1);
    const SmoothExpr& gm = pd_->deriv(d - 1);
    double boundary = 0.0;
    if (j == 0) {
      boundary = gm.eval(t2) - gm.eval(t1);
      return boundary;
    }
    double p1 = 1.0, p2 = 1.0;
    for (int i = 0; i < j; ++i) {
      p1 *= t1;
      p2 *= t2;
    }
    boundary = p2 * gm.eval(t2) - p1 * gm.eval(t1);
    return boundary - j * cut_integral(j - 1, d - 1, t1, t2);
  }

  Distribution u_;
  std::shared_ptr<ProfileData> pd_;
  int s_;
  double sign_;
  int dx_;
  double m1_ = 0.0;
  double m2_ = 0.0;
  std::optional<Interval> support_;
};

SmoothExpr realize_iota(const Distribution& u, const Kernel1D& k, const QuadConfig& inner_cfg) {
  if (u.kind() == DistKind::Dirac) {
    const double s = static_cast<double>(k.s);
    const int m = u.order();
    const double sign = m % 2 == 0 ? 1.0 : -s;
    return prod({constant(sign), affine(-s, s * u.point(), k.g.derive_n(m))});
  }
  int max_deg = 0;
  for (const Piece& p : u.pieces()) {
    max_deg = std::max(max_deg, static_cast<int>(p.coeffs.size()) - 1);
  }
  auto pd = std::make_shared<ProfileData>(k.g, max_deg, inner_cfg);
  return mollified(std::make_shared<PPMollified>(u, std::move(pd), k.s, 1.0, 0));
}

}  // namespace

SmoothExpr realize(const Representative& r, const Kernel1D& k, const QuadConfig& inner_cfg) {
  switch (r.kind()) {
    case RepKind::Iota:
      return realize_iota(r.dist(), k, inner_cfg);
    case RepKind::Sigma:
      return r.smooth();
    case RepKind::Sum: {
      std::vector<SmoothExpr> terms;
      terms.reserve(r.children().size());
      for (const auto& c : r.children()) terms.push_back(realize(c, k, inner_cfg));
      return sum(std::move(terms));
    }
    case RepKind::Prod: {
      std::vector<SmoothExpr> factors;
      factors.reserve(r.children().size());
      for (const auto& c : r.children()) factors.push_back(realize(c, k, inner_cfg));
      return prod(std::move(factors));
    }
    case RepKind::IntPow:
      return intpow(realize(r.children()[0], k, inner_cfg), r.power());
    case RepKind::Deriv:
      return realize(r.children()[0], k, inner_cfg).derive_n(r.deriv_order());
  }
  throw std::logic_error("realize: unknown representative kind");
}

SmoothExpr realize(const Representative& r, const KernelSpec& spec, double eps,
                   const QuadConfig& inner_cfg) {
  return realize(r, kernel_profile(spec, eps), inner_cfg);
}

double pair_realized(const SmoothExpr& realized, const SmoothExpr& probe, const QuadConfig& cfg) {
  const auto ps = probe.support();
  if (!ps) throw std::invalid_argument("pair_realized: probe must have compact support");

  std::vector<SmoothExpr> terms;
  if (realized.kind() == NodeKind::Sum) {
    terms = realized.children();
  } else {
    terms = {realized};
  }
  double total = 0.0;
  for (const SmoothExpr& t : terms) {
    Interval domain = *ps;
    if (auto ts = t.support()) {
      auto clipped = intersect(domain, *ts);
      if (!clipped) continue;
      domain = *clipped;
    }
    if (domain.degenerate()) continue;
    total += integrate([&t, &probe](double x) { return t.eval(x) * probe.eval(x); }, domain, cfg);
  }
  return total;
}

double theta_pairing(const Representative& r, const KernelSpec& spec, double eps,
                     const SmoothExpr& probe, const QuadConfig& cfg) {
  QuadConfig inner = cfg;
  inner.abs_tol = cfg.abs_tol * 1e-3;
  return pair_realized(realize(r, kernel_profile(spec, eps), inner), probe, cfg);
}

}  // namespace colombeau
