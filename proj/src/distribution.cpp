#include "colombeau/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace colombeau {

namespace {

void validate_pieces(const std::vector<Piece>& pieces) {
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const Piece& p = pieces[i];
    if (std::isnan(p.lo) || std::isnan(p.hi) || !(p.lo < p.hi)) {
      throw std::invalid_argument("Piece: requires lo < hi");
    }
    if (p.coeffs.empty()) throw std::invalid_argument("Piece: empty coefficient list");
    for (double c : p.coeffs) {
      if (!std::isfinite(c)) throw std::invalid_argument("Piece: non-finite coefficient");
    }
    if (i > 0 && !(pieces[i - 1].hi <= p.lo)) {
      throw std::invalid_argument("Distribution: pieces must be sorted with disjoint interiors");
    }
  }
}

double poly_deriv_eval(const std::vector<double>& c, double x, int j) {
  const int n = static_cast<int>(c.size());
  if (j >= n) return 0.0;
  // Horner on the j-th derivative's coefficients c_i * i!/(i-j)!.
  double r = 0.0;
  for (int i = n - 1; i >= j; --i) {
    double f = 1.0;
    for (int t = i - j + 1; t <= i; ++t) f *= t;
    r = r * x + c[static_cast<std::size_t>(i)] * f;
  }
  return r;
}

}  // namespace

Distribution Distribution::dirac(double point, int order) {
  if (!std::isfinite(point)) throw std::invalid_argument("dirac: point must be finite");
  if (order < 0) throw std::invalid_argument("dirac: order must be >= 0");
  Distribution d;
  d.kind_ = DistKind::Dirac;
  d.point_ = point;
  d.order_ = order;
  return d;
}

Distribution Distribution::heaviside(double jump) {
  if (!std::isfinite(jump)) throw std::invalid_argument("heaviside: jump must be finite");
  return piecewise({Piece{jump, std::numeric_limits<double>::infinity(), {1.0}}});
}

Distribution Distribution::piecewise(std::vector<Piece> pieces) {
  validate_pieces(pieces);
  Distribution d;
  d.kind_ = DistKind::PiecewisePoly;
  d.pieces_ = std::move(pieces);
  return d;
}

Distribution Distribution::polynomial(std::vector<double> coeffs) {
  const double inf = std::numeric_limits<double>::infinity();
  return piecewise({Piece{-inf, inf, std::move(coeffs)}});
}

double Distribution::eval(double x) const { return eval_derivative(x, 0); }

double Distribution::eval_derivative(double x, int j) const {
  if (kind_ != DistKind::PiecewisePoly) {
    throw std::logic_error("Distribution: pointwise evaluation needs piecewise data");
  }
  if (j < 0) throw std::invalid_argument("eval_derivative: order must be >= 0");
  for (const Piece& p : pieces_) {
    if (p.lo <= x && x < p.hi) return poly_deriv_eval(p.coeffs, x, j);
  }
  // Closed hit where a piece ends exactly at x (right domain endpoints).
  for (const Piece& p : pieces_) {
    if (x == p.hi) return poly_deriv_eval(p.coeffs, x, j);
  }
  return 0.0;
}

// Strict one-sided limit: a gap between pieces reads as 0.
double Distribution::eval_derivative_side(double x, int j, int side) const {
  if (kind_ != DistKind::PiecewisePoly) {
    throw std::logic_error("Distribution: pointwise evaluation needs piecewise data");
  }
  if (j < 0) throw std::invalid_argument("eval_derivative: order must be >= 0");
  for (const Piece& p : pieces_) {
    const bool inside = side < 0 ? (p.lo < x && x <= p.hi) : (p.lo <= x && x < p.hi);
    if (inside) return poly_deriv_eval(p.coeffs, x, j);
  }
  return 0.0;
}

bool Distribution::is_ck_on(const Interval& window, int k, double tol) const {
  if (kind_ == DistKind::Dirac) return !window.contains(point_);
  std::vector<double> breaks;
  for (const Piece& p : pieces_) {
    if (std::isfinite(p.lo)) breaks.push_back(p.lo);
    if (std::isfinite(p.hi)) breaks.push_back(p.hi);
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  for (double b : breaks) {
    if (!(window.lo < b && b < window.hi)) continue;
    for (int j = 0; j <= k; ++j) {
      const double l = eval_derivative_side(b, j, -1);
      const double r = eval_derivative_side(b, j, +1);
      const double scale = std::max({1.0, std::abs(l), std::abs(r)});
      if (std::abs(l - r) > tol * scale) return false;
    }
  }
  return true;
}

std::string Distribution::describe() const {
  if (kind_ == DistKind::Dirac) {
    std::string s = "delta";
    for (int i = 0; i < order_; ++i) s += '\'';
    if (point_ != 0.0) s += "@" + format_double(point_);
    return s;
  }
  if (pieces_.size() == 1 && pieces_[0].lo == 0.0 && std::isinf(pieces_[0].hi) &&
      pieces_[0].coeffs == std::vector<double>{1.0}) {
    return "H";
  }
  std::string s = "pp[";
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    if (i) s += ';';
    s += "(" + format_double(pieces_[i].lo) + "," + format_double(pieces_[i].hi) + "):";
    for (std::size_t j = 0; j < pieces_[i].coeffs.size(); ++j) {
      if (j) s += ',';
      s += format_double(pieces_[i].coeffs[j]);
    }
  }
  return s + "]";
}

double pair(const Distribution& u, const SmoothExpr& f, const QuadConfig& cfg) {
  if (u.kind() == DistKind::Dirac) {
    const double v = f.derive_n(u.order()).eval(u.point());
    return u.order() % 2 == 0 ? v : -v;
  }
  const auto fs = f.support();
  double total = 0.0;
  for (const Piece& p : u.pieces()) {
    double lo = p.lo;
    double hi = p.hi;
    if (fs) {
      lo = std::max(lo, fs->lo);
      hi = std::min(hi, fs->hi);
    } else if (std::isinf(lo) || std::isinf(hi)) {
      throw std::invalid_argument("pair: unbounded piece needs a compactly supported function");
    }
    if (!(lo < hi)) continue;
    total += integrate(
        [&p, &f](double y) { return poly_deriv_eval(p.coeffs, y, 0) * f.eval(y); },
        Interval(lo, hi), cfg);
  }
  return total;
}

std::string DistSum::describe() const {
  if (terms.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i) s += " + ";
    if (terms[i].weight != 1.0) s += format_double(terms[i].weight) + "*";
    s += terms[i].dist.describe();
  }
  return s;
}

double pair(const DistSum& u, const SmoothExpr& f, const QuadConfig& cfg) {
  double total = 0.0;
  for (const WeightedDist& t : u.terms) total += t.weight * pair(t.dist, f, cfg);
  return total;
}

void FunctionFamily::validate() const {
  if (members.empty()) throw std::invalid_argument("FunctionFamily: must be nonempty");
  for (const auto& m : members) {
    if (const auto* d = std::get_if<Distribution>(&m.fn)) {
      if (d->kind() != DistKind::PiecewisePoly) {
        throw std::invalid_argument("FunctionFamily: distribution members must be piecewise data");
      }
    }
  }
}

double member_value(const FunctionFamily::Member& m, double x, int j) {
  if (const auto* e = std::get_if<SmoothExpr>(&m.fn)) {
    return j == 0 ? e->eval(x) : e->derive_n(j).eval(x);
  }
  return std::get<Distribution>(m.fn).eval_derivative(x, j);
}

}  // namespace colombeau
