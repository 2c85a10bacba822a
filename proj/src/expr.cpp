#include "colombeau/expr.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace colombeau {

struct SmoothExpr::Node {
  NodeKind kind = NodeKind::Const;
  double a = 0.0;  // Const value; Affine slope
  double b = 0.0;  // Affine offset
  int k = 0;       // IntPow exponent; Bump/CutoffS derivative order
  std::vector<SmoothExpr> children;
  std::shared_ptr<const MollifiedEval> dist;
  std::optional<Interval> support;
};

namespace {

using Jet = std::vector<double>;  // c[j] = f^(j)(x0) / j!

double factorial(int k) {
  double r = 1.0;
  for (int i = 2; i <= k; ++i) r *= i;
  return r;
}

Jet jet_recip(const Jet& t) {
  const int m = static_cast<int>(t.size()) - 1;
  Jet r(m + 1, 0.0);
  r[0] = 1.0 / t[0];
  for (int n = 1; n <= m; ++n) {
    double s = 0.0;
    for (int k = 1; k <= n; ++k) s += t[k] * r[n - k];
    r[n] = -r[0] * s;
  }
  return r;
}

Jet jet_exp(const Jet& u) {
  const int m = static_cast<int>(u.size()) - 1;
  Jet e(m + 1, 0.0);
  e[0] = std::exp(u[0]);
  for (int n = 1; n <= m; ++n) {
    double s = 0.0;
    for (int k = 1; k <= n; ++k) s += k * u[k] * e[n - k];
    e[n] = s / n;
  }
  return e;
}

Jet jet_div(const Jet& a, const Jet& b) {
  const int m = static_cast<int>(a.size()) - 1;
  Jet d(m + 1, 0.0);
  for (int n = 0; n <= m; ++n) {
    double s = a[n];
    for (int k = 1; k <= n; ++k) s -= b[k] * d[n - k];
    d[n] = s / b[0];
  }
  return d;
}

// exp(-1/t) for a jet t with t[0] > 0; all coefficients collapse to exact 0
// once exp underflows (the true magnitudes are then below ~1e-30).
Jet jet_exp_neg_recip(const Jet& t) {
  if (1.0 / t[0] >= 745.0) return Jet(t.size(), 0.0);
  Jet u = jet_recip(t);
  for (double& c : u) c = -c;
  return jet_exp(u);
}

// k-th derivative of exp(-1/(1-x^2)); exactly 0 for |x| >= 1.
double bump_deriv(int k, double x) {
  if (std::abs(x) >= 1.0) return 0.0;
  const double t0 = 1.0 - x * x;
  if (1.0 / t0 >= 745.0) return 0.0;
  if (k == 0) return std::exp(-1.0 / t0);
  Jet t(k + 1, 0.0);
  t[0] = t0;
  t[1] = -2.0 * x;
  if (k >= 2) t[2] = -1.0;
  const Jet e = jet_exp_neg_recip(t);
  return e[k] * factorial(k);
}

// k-th derivative of the even cutoff chi: 1 on [-1,1], 0 outside [-2,2],
// s(2-|x|)/(s(2-|x|)+s(|x|-1)) in between with s(t) = exp(-1/t).
double cutoff_deriv(int k, double x) {
  const double ax = std::abs(x);
  if (ax <= 1.0) return k == 0 ? 1.0 : 0.0;
  if (ax >= 2.0) return 0.0;
  Jet ta(k + 1, 0.0), tb(k + 1, 0.0);
  ta[0] = 2.0 - ax;
  tb[0] = ax - 1.0;
  if (k >= 1) {
    ta[1] = -1.0;
    tb[1] = 1.0;
  }
  const Jet a = jet_exp_neg_recip(ta);
  const Jet b = jet_exp_neg_recip(tb);
  Jet denom(k + 1, 0.0);
  for (int i = 0; i <= k; ++i) denom[i] = a[i] + b[i];
  const Jet chi = jet_div(a, denom);
  double v = chi[k] * factorial(k);
  if (x < 0.0 && (k % 2 == 1)) v = -v;
  return v;
}

using NodePtr = std::shared_ptr<const SmoothExpr::Node>;

SmoothExpr wrap(SmoothExpr::Node n) {
  return SmoothExpr(std::make_shared<const SmoothExpr::Node>(std::move(n)));
}

SmoothExpr make_atom(NodeKind kind, int order) {
  SmoothExpr::Node n;
  n.kind = kind;
  n.k = order;
  n.support = kind == NodeKind::Bump ? Interval(-1.0, 1.0) : Interval(-2.0, 2.0);
  return wrap(std::move(n));
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

SmoothExpr::SmoothExpr() : node_(constant(0.0).node()) {}

NodeKind SmoothExpr::kind() const { return node_->kind; }
std::optional<Interval> SmoothExpr::support() const { return node_->support; }
double SmoothExpr::const_value() const { return node_->a; }
double SmoothExpr::affine_a() const { return node_->a; }
double SmoothExpr::affine_b() const { return node_->b; }
int SmoothExpr::power() const { return node_->k; }
int SmoothExpr::atom_order() const { return node_->k; }
const std::vector<SmoothExpr>& SmoothExpr::children() const { return node_->children; }
std::shared_ptr<const MollifiedEval> SmoothExpr::mollified() const { return node_->dist; }

double SmoothExpr::eval(double x) const {
  const Node& n = *node_;
  if (n.support && !n.support->contains(x)) return 0.0;
  switch (n.kind) {
    case NodeKind::Const:
      return n.a;
    case NodeKind::Var:
      return x;
    case NodeKind::Affine:
      return n.children[0].eval(n.a * x + n.b);
    case NodeKind::Sum: {
      double s = 0.0;
      for (const auto& c : n.children) s += c.eval(x);
      return s;
    }
    case NodeKind::Prod: {
      double p = 1.0;
      for (const auto& c : n.children) {
        p *= c.eval(x);
        if (p == 0.0) return 0.0;
      }
      return p;
    }
    case NodeKind::IntPow: {
      const double v = n.children[0].eval(x);
      double r = 1.0;
      for (int i = 0; i < n.k; ++i) r *= v;
      return r;
    }
    case NodeKind::Bump:
      return bump_deriv(n.k, x);
    case NodeKind::CutoffS:
      return cutoff_deriv(n.k, x);
    case NodeKind::MollifiedDist:
      return n.dist->eval(x);
  }
  return 0.0;
}

SmoothExpr constant(double c) {
  SmoothExpr::Node n;
  n.kind = NodeKind::Const;
  n.a = c;
  if (c == 0.0) n.support = Interval(0.0, 0.0);
  return wrap(std::move(n));
}

SmoothExpr variable() {
  SmoothExpr::Node n;
  n.kind = NodeKind::Var;
  return wrap(std::move(n));
}

SmoothExpr affine(double a, double b, const SmoothExpr& inner) {
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw std::invalid_argument("affine: coefficients must be finite");
  }
  if (inner.kind() == NodeKind::Const) return inner;
  if (a == 0.0) return constant(inner.eval(b));
  if (a == 1.0 && b == 0.0) return inner;
  SmoothExpr::Node n;
  n.kind = NodeKind::Affine;
  n.a = a;
  n.b = b;
  if (auto s = inner.support()) {
    const double p = (s->lo - b) / a;
    const double q = (s->hi - b) / a;
    n.support = p <= q ? Interval(p, q) : Interval(q, p);
  }
  n.children = {inner};
  return wrap(std::move(n));
}

SmoothExpr sum(std::vector<SmoothExpr> terms) {
  double total = 0.0;
  std::vector<SmoothExpr> kept;
  kept.reserve(terms.size());
  for (auto& t : terms) {
    if (t.kind() == NodeKind::Const) {
      total += t.const_value();
    } else {
      kept.push_back(std::move(t));
    }
  }
  if (kept.empty()) return constant(total);
  if (total != 0.0) kept.insert(kept.begin(), constant(total));
  if (kept.size() == 1) return kept[0];
  SmoothExpr::Node n;
  n.kind = NodeKind::Sum;
  bool all_supported = true;
  std::optional<Interval> h;
  for (const auto& c : kept) {
    auto s = c.support();
    if (!s) {
      all_supported = false;
      break;
    }
    h = h ? hull(*h, *s) : *s;
  }
  if (all_supported) n.support = h;
  n.children = std::move(kept);
  return wrap(std::move(n));
}

SmoothExpr prod(std::vector<SmoothExpr> factors) {
  double coeff = 1.0;
  std::vector<SmoothExpr> kept;
  kept.reserve(factors.size());
  for (auto& f : factors) {
    if (f.kind() == NodeKind::Const) {
      coeff *= f.const_value();
    } else {
      kept.push_back(std::move(f));
    }
  }
  if (coeff == 0.0 || kept.empty()) return constant(coeff);
  std::optional<Interval> common;
  bool any = false;
  for (const auto& c : kept) {
    if (auto s = c.support()) {
      if (!any) {
        common = *s;
        any = true;
      } else {
        auto isect = intersect(*common, *s);
        if (!isect) return constant(0.0);
        common = *isect;
      }
    }
  }
  if (coeff != 1.0) kept.insert(kept.begin(), constant(coeff));
  if (kept.size() == 1) return kept[0];
  SmoothExpr::Node n;
  n.kind = NodeKind::Prod;
  if (any) n.support = common;
  n.children = std::move(kept);
  return wrap(std::move(n));
}

SmoothExpr intpow(const SmoothExpr& base, int k) {
  if (k < 0) throw std::invalid_argument("intpow: exponent must be >= 0");
  if (k == 0) return constant(1.0);
  if (k == 1) return base;
  if (base.kind() == NodeKind::Const) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= base.const_value();
    return constant(r);
  }
  SmoothExpr::Node n;
  n.kind = NodeKind::IntPow;
  n.k = k;
  n.support = base.support();
  n.children = {base};
  return wrap(std::move(n));
}

SmoothExpr bump() { return make_atom(NodeKind::Bump, 0); }
SmoothExpr cutoff_s() { return make_atom(NodeKind::CutoffS, 0); }

SmoothExpr mollified(std::shared_ptr<const MollifiedEval> impl) {
  if (!impl) throw std::invalid_argument("mollified: null evaluator");
  SmoothExpr::Node n;
  n.kind = NodeKind::MollifiedDist;
  n.support = impl->support();
  n.dist = std::move(impl);
  return wrap(std::move(n));
}

SmoothExpr SmoothExpr::derive() const {
  const Node& n = *node_;
  switch (n.kind) {
    case NodeKind::Const:
      return constant(0.0);
    case NodeKind::Var:
      return constant(1.0);
    case NodeKind::Affine:
      return prod({constant(n.a), affine(n.a, n.b, n.children[0].derive())});
    case NodeKind::Sum: {
      std::vector<SmoothExpr> d;
      d.reserve(n.children.size());
      for (const auto& c : n.children) d.push_back(c.derive());
      return sum(std::move(d));
    }
    case NodeKind::Prod: {
      std::vector<SmoothExpr> terms;
      terms.reserve(n.children.size());
      for (std::size_t i = 0; i < n.children.size(); ++i) {
        std::vector<SmoothExpr> factors = n.children;
        factors[i] = n.children[i].derive();
        terms.push_back(prod(std::move(factors)));
      }
      return sum(std::move(terms));
    }
    case NodeKind::IntPow:
      return prod({constant(static_cast<double>(n.k)), intpow(n.children[0], n.k - 1),
                   n.children[0].derive()});
    case NodeKind::Bump:
      return make_atom(NodeKind::Bump, n.k + 1);
    case NodeKind::CutoffS:
      return make_atom(NodeKind::CutoffS, n.k + 1);
    case NodeKind::MollifiedDist:
      return colombeau::mollified(n.dist->derivative());
  }
  return constant(0.0);
}

SmoothExpr SmoothExpr::derive_n(int m) const {
  if (m < 0) throw std::invalid_argument("derive_n: order must be >= 0");
  SmoothExpr e = *this;
  for (int i = 0; i < m; ++i) e = e.derive();
  return e;
}

namespace {

std::vector<double> poly_add(const std::vector<double>& p, const std::vector<double>& q) {
  std::vector<double> r(std::max(p.size(), q.size()), 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) r[i] += p[i];
  for (std::size_t i = 0; i < q.size(); ++i) r[i] += q[i];
  return r;
}

std::vector<double> poly_mul(const std::vector<double>& p, const std::vector<double>& q) {
  std::vector<double> r(p.size() + q.size() - 1, 0.0);
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j) r[i + j] += p[i] * q[j];
  return r;
}

std::vector<double> poly_trim(std::vector<double> p) {
  while (p.size() > 1 && p.back() == 0.0) p.pop_back();
  return p;
}

}  // namespace

std::optional<std::vector<double>> to_polynomial(const SmoothExpr& e) {
  switch (e.kind()) {
    case NodeKind::Const:
      return std::vector<double>{e.const_value()};
    case NodeKind::Var:
      return std::vector<double>{0.0, 1.0};
    case NodeKind::Sum: {
      std::vector<double> r{0.0};
      for (const auto& c : e.children()) {
        auto p = to_polynomial(c);
        if (!p) return std::nullopt;
        r = poly_add(r, *p);
      }
      return poly_trim(std::move(r));
    }
    case NodeKind::Prod: {
      std::vector<double> r{1.0};
      for (const auto& c : e.children()) {
        auto p = to_polynomial(c);
        if (!p) return std::nullopt;
        r = poly_mul(r, *p);
      }
      return poly_trim(std::move(r));
    }
    case NodeKind::IntPow: {
      auto p = to_polynomial(e.children()[0]);
      if (!p) return std::nullopt;
      std::vector<double> r{1.0};
      for (int i = 0; i < e.power(); ++i) r = poly_mul(r, *p);
      return poly_trim(std::move(r));
    }
    case NodeKind::Affine: {
      auto p = to_polynomial(e.children()[0]);
      if (!p) return std::nullopt;
      const std::vector<double> lin{e.affine_b(), e.affine_a()};
      std::vector<double> r{p->back()};
      for (int i = static_cast<int>(p->size()) - 2; i >= 0; --i) {
        r = poly_mul(r, lin);
        r[0] += (*p)[i];
      }
      return poly_trim(std::move(r));
    }
    default:
      return std::nullopt;
  }
}

namespace {

// Rendering precedence: sum = 1, product = 2, power = 4, atom = 5.
std::string render_rec(const SmoothExpr& e, int parent_prec);

std::string paren_if(const std::string& s, bool cond) {
  return cond ? "(" + s + ")" : s;
}

std::string render_atom_name(const SmoothExpr& e) {
  std::string name = e.kind() == NodeKind::Bump ? "bump" : "cutoff";
  if (e.atom_order() > 0) name += "^(" + std::to_string(e.atom_order()) + ")";
  return name;
}

std::string render_rec(const SmoothExpr& e, int parent_prec) {
  switch (e.kind()) {
    case NodeKind::Const: {
      std::string s = format_double(e.const_value());
      return paren_if(s, e.const_value() < 0.0 && parent_prec > 1);
    }
    case NodeKind::Var:
      return "x";
    case NodeKind::Sum: {
      std::string s;
      for (std::size_t i = 0; i < e.children().size(); ++i) {
        if (i) s += " + ";
        s += render_rec(e.children()[i], 1);
      }
      return paren_if(s, parent_prec > 1);
    }
    case NodeKind::Prod: {
      std::string s;
      for (std::size_t i = 0; i < e.children().size(); ++i) {
        if (i) s += "*";
        s += render_rec(e.children()[i], 2);
      }
      return paren_if(s, parent_prec > 2);
    }
    case NodeKind::IntPow:
      return render_rec(e.children()[0], 5) + "^" + std::to_string(e.power());
    case NodeKind::Affine: {
      const SmoothExpr& inner = e.children()[0];
      std::string arg = format_double(e.affine_a()) + "*x";
      const double b = e.affine_b();
      if (b > 0.0) {
        arg += " + " + format_double(b);
      } else if (b < 0.0) {
        arg += " - " + format_double(-b);
      }
      if (inner.kind() == NodeKind::Bump || inner.kind() == NodeKind::CutoffS) {
        return render_atom_name(inner) + "(" + arg + ")";
      }
      return "[" + render_rec(inner, 0) + "](" + arg + ")";
    }
    case NodeKind::Bump:
    case NodeKind::CutoffS:
      return render_atom_name(e);
    case NodeKind::MollifiedDist:
      return e.mollified()->describe();
  }
  return "?";
}

}  // namespace

std::string render_smooth(const SmoothExpr& e) { return render_rec(e, 0); }

ProbeFamily ProbeFamily::default_family() {
  ProbeFamily fam;
  fam.probes = {bump(),
                affine(2.0, -1.0, bump()),
                affine(2.0, 1.0, bump()),
                affine(4.0, -2.0, bump()),
                affine(4.0, 2.0, bump()),
                prod({variable(), bump()})};
  fam.names = {"bump(x)",       "bump(2*x - 1)", "bump(2*x + 1)",
               "bump(4*x - 2)", "bump(4*x + 2)", "x*bump(x)"};
  return fam;
}

void ProbeFamily::validate() const {
  if (probes.empty()) throw std::invalid_argument("ProbeFamily: must be nonempty");
  if (!names.empty() && names.size() != probes.size()) {
    throw std::invalid_argument("ProbeFamily: names/probes size mismatch");
  }
  for (const auto& p : probes) {
    if (!p.support()) {
      throw std::invalid_argument("ProbeFamily: every probe needs compact support");
    }
  }
}

}  // namespace colombeau
