#include "colombeau/parser.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstring>
#include <limits>
#include <stdexcept>
#include <utility>

#include "colombeau/errors.hpp"

namespace colombeau {
namespace ast {

namespace {

AstPtr node(AstKind k, std::vector<AstPtr> kids = {}) {
  auto n = std::make_shared<ExprAst>();
  n->kind = k;
  n->kids = std::move(kids);
  return n;
}

}  // namespace

AstPtr num(double v) {
  auto n = std::make_shared<ExprAst>();
  n->kind = AstKind::Num;
  n->num = v;
  return n;
}

AstPtr var_x() { return node(AstKind::VarX); }
AstPtr bump() { return node(AstKind::BumpAtom); }
AstPtr bump_of(AstPtr arg) { return node(AstKind::CallBump, {std::move(arg)}); }
AstPtr cutoff() { return node(AstKind::CutoffAtom); }
AstPtr cutoff_of(AstPtr arg) { return node(AstKind::CallCutoff, {std::move(arg)}); }

AstPtr iota(Distribution u) {
  auto n = std::make_shared<ExprAst>();
  n->kind = AstKind::Iota;
  n->dist = std::move(u);
  return n;
}

AstPtr sigma(AstPtr body) { return node(AstKind::Sigma, {std::move(body)}); }
AstPtr deriv(AstPtr body) { return node(AstKind::DerivCall, {std::move(body)}); }
AstPtr add(AstPtr lhs, AstPtr rhs) { return node(AstKind::Add, {std::move(lhs), std::move(rhs)}); }
AstPtr sub(AstPtr lhs, AstPtr rhs) { return node(AstKind::Sub, {std::move(lhs), std::move(rhs)}); }
AstPtr mul(AstPtr lhs, AstPtr rhs) { return node(AstKind::Mul, {std::move(lhs), std::move(rhs)}); }

AstPtr pow(AstPtr base, int k) {
  if (k < 0) throw std::invalid_argument("ast::pow: exponent must be >= 0");
  auto n = std::make_shared<ExprAst>();
  n->kind = AstKind::Pow;
  n->exponent = k;
  n->kids = {std::move(base)};
  return n;
}

AstPtr neg(AstPtr body) { return node(AstKind::Neg, {std::move(body)}); }

}  // namespace ast

namespace {

using ast::AstKind;
using ast::AstPtr;

class Parser {
 public:
  explicit Parser(const std::string& src) : src_(src) {}

  AstPtr parse_full() {
    AstPtr t = parse_sum();
    expect_end();
    return t;
  }

  Distribution parse_distribution_full() {
    Distribution u = parse_dist();
    expect_end();
    return u;
  }

  DistSum parse_candidate_full() {
    DistSum s = parse_cand_sum();
    expect_end();
    return s;
  }

 private:
  const std::string& src_;
  std::size_t pos_ = 0;

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  bool accept(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c, const char* what) {
    if (!accept(c)) fail({std::string("'") + c + "'"}, what);
  }

  void expect_end() {
    if (peek() != '\0') fail({"end of input"}, "trailing input");
  }

  [[noreturn]] void fail(std::vector<std::string> expected, const std::string& what) {
    std::string msg = "syntax error at offset " + std::to_string(pos_) + ": " + what;
    if (!expected.empty()) {
      msg += " (expected ";
      for (std::size_t i = 0; i < expected.size(); ++i) {
        if (i) msg += ", ";
        msg += expected[i];
      }
      msg += ")";
    }
    throw SyntaxError(pos_, std::move(expected), msg);
  }

  bool ident_char(char c) const {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  // Returns the identifier starting at the cursor without consuming it.
  std::string peek_ident() {
    skip_ws();
    std::size_t end = pos_;
    while (end < src_.size() && ident_char(src_[end])) ++end;
    return src_.substr(pos_, end - pos_);
  }

  bool accept_ident(const char* name) {
    if (peek_ident() == name) {
      pos_ += std::strlen(name);
      return true;
    }
    return false;
  }

  double parse_number() {
    skip_ws();
    double v = 0.0;
    auto res = std::from_chars(src_.data() + pos_, src_.data() + src_.size(), v);
    if (res.ec != std::errc() || res.ptr == src_.data() + pos_)
      fail({"number"}, "expected a number");
    pos_ = static_cast<std::size_t>(res.ptr - src_.data());
    return v;
  }

  double parse_signed_number() {
    bool negate = false;
    if (accept('-'))
      negate = true;
    else
      accept('+');
    double v = parse_number();
    return negate ? -v : v;
  }

  int parse_uint() {
    skip_ws();
    std::size_t start = pos_;
    long v = 0;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
      v = v * 10 + (src_[pos_] - '0');
      if (v > 1000000) fail({"small nonnegative integer"}, "exponent too large");
      ++pos_;
    }
    if (pos_ == start) fail({"nonnegative integer"}, "expected an integer exponent");
    return static_cast<int>(v);
  }

  AstPtr parse_sum() {
    AstPtr t = parse_term();
    for (;;) {
      if (accept('+'))
        t = ast::add(std::move(t), parse_term());
      else if (accept('-'))
        t = ast::sub(std::move(t), parse_term());
      else
        return t;
    }
  }

  AstPtr parse_term() {
    AstPtr t = parse_factor();
    while (accept('*')) t = ast::mul(std::move(t), parse_factor());
    return t;
  }

  AstPtr parse_factor() {
    if (accept('-')) return ast::neg(parse_factor());
    return parse_power();
  }

  AstPtr parse_power() {
    AstPtr base = parse_atom();
    if (accept('^')) return ast::pow(std::move(base), parse_uint());
    return base;
  }

  AstPtr parse_atom() {
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return ast::num(parse_number());
    if (c == '(') {
      ++pos_;
      AstPtr t = parse_sum();
      expect(')', "unclosed parenthesis");
      return t;
    }
    const std::string id = peek_ident();
    if (id == "x") {
      pos_ += 1;
      return ast::var_x();
    }
    if (id == "bump" || id == "cutoff") {
      pos_ += id.size();
      const bool is_bump = id == "bump";
      if (accept('(')) {
        AstPtr arg = parse_sum();
        expect(')', "unclosed argument list");
        return is_bump ? ast::bump_of(std::move(arg)) : ast::cutoff_of(std::move(arg));
      }
      return is_bump ? ast::bump() : ast::cutoff();
    }
    if (id == "iota") {
      pos_ += id.size();
      expect('(', "iota needs a parenthesized distribution");
      Distribution u = parse_dist();
      expect(')', "unclosed iota(...)");
      return ast::iota(std::move(u));
    }
    if (id == "sigma") {
      pos_ += id.size();
      expect('(', "sigma needs a parenthesized expression");
      AstPtr body = parse_sum();
      expect(')', "unclosed sigma(...)");
      return ast::sigma(std::move(body));
    }
    if (id == "d") {
      pos_ += id.size();
      expect('(', "d needs a parenthesized expression");
      AstPtr body = parse_sum();
      expect(')', "unclosed d(...)");
      return ast::deriv(std::move(body));
    }
    fail({"number", "'x'", "'bump'", "'cutoff'", "'iota'", "'sigma'", "'d'", "'('"},
         "expected an atom");
  }

  double parse_bound() {
    bool negate = false;
    if (accept('-'))
      negate = true;
    else
      accept('+');
    double v;
    if (accept_ident("inf"))
      v = std::numeric_limits<double>::infinity();
    else
      v = parse_number();
    return negate ? -v : v;
  }

  Distribution parse_dist() {
    const std::string id = peek_ident();
    if (id == "delta") {
      pos_ += id.size();
      int order = 0;
      while (pos_ < src_.size() && src_[pos_] == '\'') {
        ++order;
        ++pos_;
      }
      double point = 0.0;
      if (accept('@')) point = parse_signed_number();
      return Distribution::dirac(point, order);
    }
    if (id == "H") {
      pos_ += id.size();
      return Distribution::heaviside();
    }
    if (id == "pp") {
      pos_ += id.size();
      expect('[', "pp needs a bracketed piece list");
      std::vector<Piece> pieces;
      for (;;) {
        expect('(', "piece starts with (lo,hi)");
        Piece p;
        p.lo = parse_bound();
        expect(',', "piece bounds are comma-separated");
        p.hi = parse_bound();
        expect(')', "unclosed piece bounds");
        expect(':', "piece bounds are followed by ':' and coefficients");
        p.coeffs.push_back(parse_signed_number());
        while (accept(',')) p.coeffs.push_back(parse_signed_number());
        pieces.push_back(std::move(p));
        if (!accept(';')) break;
      }
      expect(']', "unclosed pp[...]");
      return Distribution::piecewise(std::move(pieces));
    }
    fail({"'delta'", "'H'", "'pp'"}, "expected a distribution");
  }

  DistSum parse_cand_sum() {
    DistSum s;
    bool negate = accept('-');
    parse_cand_term(s, negate);
    for (;;) {
      if (accept('+'))
        parse_cand_term(s, false);
      else if (accept('-'))
        parse_cand_term(s, true);
      else
        return s;
    }
  }

  void parse_cand_term(DistSum& s, bool negate) {
    if (accept('-')) {
      negate = !negate;
    }
    const char c = peek();
    double weight = 1.0;
    bool have_weight = false;
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      weight = parse_number();
      have_weight = true;
      if (!accept('*')) {
        if (weight != 0.0)
          s.terms.push_back({negate ? -weight : weight, Distribution::polynomial({1.0})});
        return;
      }
    }
    (void)have_weight;
    Distribution u = parse_dist();
    s.terms.push_back({negate ? -weight : weight, std::move(u)});
  }
};

int prec_of(AstKind k) {
  switch (k) {
    case AstKind::Add:
    case AstKind::Sub:
      return 1;
    case AstKind::Mul:
      return 2;
    case AstKind::Neg:
      return 3;
    case AstKind::Pow:
      return 4;
    default:
      return 5;
  }
}

void render_to(const AstPtr& t, int parent_prec, std::string& out) {
  const int prec = prec_of(t->kind);
  const bool parens = prec < parent_prec;
  if (parens) out += '(';
  switch (t->kind) {
    case AstKind::Num:
      out += format_double(t->num);
      break;
    case AstKind::VarX:
      out += 'x';
      break;
    case AstKind::BumpAtom:
      out += "bump";
      break;
    case AstKind::CutoffAtom:
      out += "cutoff";
      break;
    case AstKind::CallBump:
      out += "bump(";
      render_to(t->kids[0], 0, out);
      out += ')';
      break;
    case AstKind::CallCutoff:
      out += "cutoff(";
      render_to(t->kids[0], 0, out);
      out += ')';
      break;
    case AstKind::Iota:
      out += "iota(" + t->dist.describe() + ")";
      break;
    case AstKind::Sigma:
      out += "sigma(";
      render_to(t->kids[0], 0, out);
      out += ')';
      break;
    case AstKind::DerivCall:
      out += "d(";
      render_to(t->kids[0], 0, out);
      out += ')';
      break;
    case AstKind::Add:
      render_to(t->kids[0], 1, out);
      out += " + ";
      render_to(t->kids[1], 2, out);
      break;
    case AstKind::Sub:
      render_to(t->kids[0], 1, out);
      out += " - ";
      render_to(t->kids[1], 2, out);
      break;
    case AstKind::Mul:
      render_to(t->kids[0], 2, out);
      out += '*';
      render_to(t->kids[1], 3, out);
      break;
    case AstKind::Neg:
      out += '-';
      render_to(t->kids[0], 3, out);
      break;
    case AstKind::Pow:
      render_to(t->kids[0], 5, out);
      out += '^' + std::to_string(t->exponent);
      break;
  }
  if (parens) out += ')';
}

bool bits_equal(double a, double b) {
  return std::memcmp(&a, &b, sizeof(double)) == 0;
}

bool dist_equal(const Distribution& a, const Distribution& b) {
  if (a.kind() != b.kind()) return false;
  if (a.kind() == DistKind::Dirac)
    return bits_equal(a.point(), b.point()) && a.order() == b.order();
  const auto& pa = a.pieces();
  const auto& pb = b.pieces();
  if (pa.size() != pb.size()) return false;
  for (std::size_t i = 0; i < pa.size(); ++i) {
    if (!bits_equal(pa[i].lo, pb[i].lo) || !bits_equal(pa[i].hi, pb[i].hi)) return false;
    if (pa[i].coeffs.size() != pb[i].coeffs.size()) return false;
    for (std::size_t j = 0; j < pa[i].coeffs.size(); ++j)
      if (!bits_equal(pa[i].coeffs[j], pb[i].coeffs[j])) return false;
  }
  return true;
}

SmoothExpr affine_in_bump(const AstPtr& arg, const SmoothExpr& profile, const char* name) {
  const SmoothExpr inner = lower_smooth(arg);
  const auto poly = to_polynomial(inner);
  if (!poly || poly->size() > 2)
    throw std::invalid_argument(std::string(name) + " argument must be affine in x");
  const double b = poly->empty() ? 0.0 : (*poly)[0];
  const double a = poly->size() > 1 ? (*poly)[1] : 0.0;
  return affine(a, b, profile);
}

}  // namespace

ast::AstPtr parse(const std::string& src) { return Parser(src).parse_full(); }

std::string render(const ast::AstPtr& t) {
  std::string out;
  render_to(t, 0, out);
  return out;
}

bool ast_equal(const ast::AstPtr& a, const ast::AstPtr& b) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case AstKind::Num:
      return bits_equal(a->num, b->num);
    case AstKind::Iota:
      return dist_equal(a->dist, b->dist);
    case AstKind::Pow:
      if (a->exponent != b->exponent) return false;
      break;
    default:
      break;
  }
  if (a->kids.size() != b->kids.size()) return false;
  for (std::size_t i = 0; i < a->kids.size(); ++i)
    if (!ast_equal(a->kids[i], b->kids[i])) return false;
  return true;
}

Distribution parse_distribution(const std::string& src) {
  return Parser(src).parse_distribution_full();
}

DistSum parse_candidate(const std::string& src) { return Parser(src).parse_candidate_full(); }

Representative lower(const ast::AstPtr& t) {
  switch (t->kind) {
    case AstKind::Num:
      return Representative::sigma(constant(t->num));
    case AstKind::VarX:
      return Representative::sigma(variable());
    case AstKind::BumpAtom:
    case AstKind::CutoffAtom:
    case AstKind::CallBump:
    case AstKind::CallCutoff:
      return Representative::sigma(lower_smooth(t));
    case AstKind::Iota:
      return Representative::iota(t->dist);
    case AstKind::Sigma:
      return Representative::sigma(lower_smooth(t->kids[0]));
    case AstKind::DerivCall:
      return Representative::deriv(lower(t->kids[0]), 1);
    case AstKind::Add:
      return Representative::sum({lower(t->kids[0]), lower(t->kids[1])});
    case AstKind::Sub:
      return Representative::sum(
          {lower(t->kids[0]),
           Representative::prod({Representative::sigma(constant(-1.0)), lower(t->kids[1])})});
    case AstKind::Mul:
      return Representative::prod({lower(t->kids[0]), lower(t->kids[1])});
    case AstKind::Pow:
      return Representative::intpow(lower(t->kids[0]), t->exponent);
    case AstKind::Neg:
      return Representative::prod(
          {Representative::sigma(constant(-1.0)), lower(t->kids[0])});
  }
  throw std::logic_error("lower: unhandled node");
}

SmoothExpr lower_smooth(const ast::AstPtr& t) {
  switch (t->kind) {
    case AstKind::Num:
      return constant(t->num);
    case AstKind::VarX:
      return variable();
    case AstKind::BumpAtom:
      return bump();
    case AstKind::CutoffAtom:
      return cutoff_s();
    case AstKind::CallBump:
      return affine_in_bump(t->kids[0], bump(), "bump");
    case AstKind::CallCutoff:
      return affine_in_bump(t->kids[0], cutoff_s(), "cutoff");
    case AstKind::Iota:
      throw std::invalid_argument("lower_smooth: iota(...) is not a smooth expression");
    case AstKind::Sigma:
      return lower_smooth(t->kids[0]);
    case AstKind::DerivCall:
      return lower_smooth(t->kids[0]).derive_n(1);
    case AstKind::Add:
      return sum({lower_smooth(t->kids[0]), lower_smooth(t->kids[1])});
    case AstKind::Sub:
      return sum({lower_smooth(t->kids[0]),
                  prod({constant(-1.0), lower_smooth(t->kids[1])})});
    case AstKind::Mul:
      return prod({lower_smooth(t->kids[0]), lower_smooth(t->kids[1])});
    case AstKind::Pow:
      return intpow(lower_smooth(t->kids[0]), t->exponent);
    case AstKind::Neg:
      return prod({constant(-1.0), lower_smooth(t->kids[0])});
  }
  throw std::logic_error("lower_smooth: unhandled node");
}

}  // namespace colombeau
