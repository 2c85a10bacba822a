#pragma once

#include <string>
#include <variant>
#include <vector>

#include "colombeau/expr.hpp"

namespace colombeau {

// Polynomial piece on [lo, hi]; lo < hi, infinite bounds allowed, coeffs
// lowest-degree first and finite.
struct Piece {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<double> coeffs;
};

enum class DistKind { Dirac, PiecewisePoly };

// A concrete distribution: a derivative of a Dirac point mass, or a
// piecewise-polynomial locally integrable function.  Pieces are kept sorted
// with disjoint interiors; uncovered gaps read as 0.
class Distribution {
 public:
  static Distribution dirac(double point = 0.0, int order = 0);
  static Distribution heaviside(double jump = 0.0);
  static Distribution piecewise(std::vector<Piece> pieces);
  static Distribution polynomial(std::vector<double> coeffs);

  DistKind kind() const { return kind_; }
  double point() const { return point_; }
  int order() const { return order_; }
  const std::vector<Piece>& pieces() const { return pieces_; }

  // PiecewisePoly only (throws std::logic_error on Dirac): pointwise value
  // and piecewise j-th derivative, right-continuous at breakpoints.
  double eval(double x) const;
  double eval_derivative(double x, int j) const;
  // One-sided variant; side < 0 approaches from the left.
  double eval_derivative_side(double x, int j, int side) const;

  // True iff this is piecewise-polynomial data joining C^k at every finite
  // breakpoint strictly inside window (gap edges compare against 0).
  bool is_ck_on(const Interval& window, int k, double tol = 1e-9) const;

  std::string describe() const;

 private:
  DistKind kind_ = DistKind::PiecewisePoly;
  double point_ = 0.0;
  int order_ = 0;
  std::vector<Piece> pieces_;
};

// <u, f>.  f must carry a support bound whenever any piece is unbounded.
double pair(const Distribution& u, const SmoothExpr& f, const QuadConfig& cfg = {});

struct WeightedDist {
  double weight = 1.0;
  Distribution dist;
};

// Finite linear combination of distributions; the candidate-limit side of
// association tests.
struct DistSum {
  std::vector<WeightedDist> terms;

  std::string describe() const;
};

double pair(const DistSum& u, const SmoothExpr& f, const QuadConfig& cfg = {});

// Mixed family of test objects: smooth expressions or piecewise-polynomial
// distributions, each with a display name.
struct FunctionFamily {
  struct Member {
    std::variant<SmoothExpr, Distribution> fn;
    std::string name;
  };
  std::vector<Member> members;

  void validate() const;  // throws std::invalid_argument
};

// Value of the j-th derivative of a family member at x (piecewise for
// distribution members).
double member_value(const FunctionFamily::Member& m, double x, int j);

}  // namespace colombeau
