#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "colombeau/quadrature.hpp"

namespace colombeau {

// Evaluation hook for mollified-distribution nodes.  Implemented by the
// algebra module so expression trees stay independent of distributions.
class MollifiedEval {
 public:
  virtual ~MollifiedEval() = default;
  virtual double eval(double x) const = 0;
  virtual std::optional<Interval> support() const = 0;
  // Exact x-derivative as a new evaluator (kernel re-derivation, never
  // numeric differencing).
  virtual std::shared_ptr<const MollifiedEval> derivative() const = 0;
  virtual std::string describe() const = 0;
};

enum class NodeKind {
  Const,
  Var,
  Affine,   // x -> child(a*x + b)
  Sum,
  Prod,
  IntPow,   // child^k, k >= 0
  Bump,     // d^k/dx^k of exp(-1/(1-x^2)) on (-1,1), 0 outside
  CutoffS,  // d^k/dx^k of the smooth cutoff: 1 on [-1,1], 0 outside [-2,2]
  MollifiedDist,
};

// Immutable C^infinity scalar expression in one real variable.  A present
// support() is a bound: evaluation outside it returns exactly 0.
class SmoothExpr {
 public:
  SmoothExpr();  // the zero function

  double eval(double x) const;
  SmoothExpr derive() const;
  SmoothExpr derive_n(int m) const;  // m >= 0; m == 0 returns *this

  NodeKind kind() const;
  std::optional<Interval> support() const;

  // Structure accessors; meaningful fields depend on kind().
  double const_value() const;                   // Const
  double affine_a() const;                      // Affine
  double affine_b() const;                      // Affine
  int power() const;                            // IntPow
  int atom_order() const;                       // Bump / CutoffS derivative order
  const std::vector<SmoothExpr>& children() const;
  std::shared_ptr<const MollifiedEval> mollified() const;

  struct Node;
  explicit SmoothExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  const std::shared_ptr<const Node>& node() const { return node_; }

 private:
  std::shared_ptr<const Node> node_;
};

// Constructors perform light constant folding (exact in IEEE arithmetic)
// and compute support bounds.
SmoothExpr constant(double c);
SmoothExpr variable();
SmoothExpr affine(double a, double b, const SmoothExpr& inner);
SmoothExpr sum(std::vector<SmoothExpr> terms);
SmoothExpr prod(std::vector<SmoothExpr> factors);
SmoothExpr intpow(const SmoothExpr& base, int k);
SmoothExpr bump();
SmoothExpr cutoff_s();
SmoothExpr mollified(std::shared_ptr<const MollifiedEval> impl);

inline SmoothExpr operator+(const SmoothExpr& a, const SmoothExpr& b) { return sum({a, b}); }
inline SmoothExpr operator*(const SmoothExpr& a, const SmoothExpr& b) { return prod({a, b}); }
inline SmoothExpr operator-(const SmoothExpr& a, const SmoothExpr& b) {
  return sum({a, prod({constant(-1.0), b})});
}

// Coefficients c0..cn (lowest first) iff the tree is one global polynomial.
std::optional<std::vector<double>> to_polynomial(const SmoothExpr& e);

// Shortest decimal digits that round-trip to the exact double ("inf"/"-inf"
// for infinities).
std::string format_double(double v);

// Debug/display rendering of a smooth expression (DSL syntax where the tree
// is expressible in it; atom derivatives print as bump^(k)).
std::string render_smooth(const SmoothExpr& e);

// Nonempty family of compactly supported probes.
struct ProbeFamily {
  std::vector<SmoothExpr> probes;
  std::vector<std::string> names;

  // Five translated/dilated bumps covering (-1,1) plus the odd probe
  // x*bump(x).  The odd member is load-bearing: symmetric kernels make many
  // signals vanish on even probes by parity.
  static ProbeFamily default_family();
  void validate() const;  // throws std::invalid_argument
};

}  // namespace colombeau
