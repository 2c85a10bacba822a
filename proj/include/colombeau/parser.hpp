#pragma once

#include <memory>
#include <string>
#include <vector>

#include "colombeau/algebra.hpp"
#include "colombeau/distribution.hpp"
#include "colombeau/expr.hpp"

namespace colombeau {
namespace ast {

enum class AstKind {
  Num,
  VarX,
  BumpAtom,
  CutoffAtom,
  CallBump,
  CallCutoff,
  Iota,
  Sigma,
  DerivCall,
  Add,
  Sub,
  Mul,
  Pow,
  Neg,
};

struct ExprAst;
using AstPtr = std::shared_ptr<const ExprAst>;

struct ExprAst {
  AstKind kind;
  double num = 0.0;                          // Num
  int exponent = 0;                          // Pow
  Distribution dist = Distribution::dirac(); // Iota
  std::vector<AstPtr> kids;
};

AstPtr num(double v);
AstPtr var_x();
AstPtr bump();
AstPtr bump_of(AstPtr arg);
AstPtr cutoff();
AstPtr cutoff_of(AstPtr arg);
AstPtr iota(Distribution u);
AstPtr sigma(AstPtr body);
AstPtr deriv(AstPtr body);
AstPtr add(AstPtr lhs, AstPtr rhs);
AstPtr sub(AstPtr lhs, AstPtr rhs);
AstPtr mul(AstPtr lhs, AstPtr rhs);
AstPtr pow(AstPtr base, int k);
AstPtr neg(AstPtr body);

}  // namespace ast

// Recursive-descent parse of the expression language.  `^` binds tighter
// than `*`, which binds tighter than `+`/`-`; `*` and `+` are
// left-associative; whitespace is insignificant.  Throws SyntaxError with
// the byte offset and the token classes acceptable at that position.
ast::AstPtr parse(const std::string& src);

// Canonical text form; parse(render(t)) equals t structurally.
std::string render(const ast::AstPtr& t);

// Structural equality (numeric leaves compared bitwise).
bool ast_equal(const ast::AstPtr& a, const ast::AstPtr& b);

// One distribution atom: delta with optional primes and @point, H, or
// pp[(lo,hi):c0,c1,...;...] with inf bounds spelled "inf"/"-inf".
Distribution parse_distribution(const std::string& src);

// Weighted sum of distribution atoms, e.g. "0.5*delta + H"; a bare number
// c denotes the constant function c (as a one-piece polynomial), and "0"
// denotes the zero distribution.
DistSum parse_candidate(const std::string& src);

// Generalized-function representative: iota/sigma leaves, x as the
// embedded coordinate, arithmetic folded into sum/prod/intpow/deriv.
Representative lower(const ast::AstPtr& t);

// Smooth-only lowering for probe and sigma-body expressions; iota is
// rejected, and bump/cutoff arguments must be affine in x.
SmoothExpr lower_smooth(const ast::AstPtr& t);

}  // namespace colombeau
