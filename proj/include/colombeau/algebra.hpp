#pragma once

#include <memory>
#include <string>
#include <vector>

#include "colombeau/distribution.hpp"
#include "colombeau/mollifier.hpp"

namespace colombeau {

enum class RepKind { Iota, Sigma, Sum, Prod, IntPow, Deriv };

// Symbolic representative of a generalized function: distributions entering
// through the kernel embedding, smooth functions entering through the
// constant embedding, combined by algebra operations and derivatives.
class Representative {
 public:
  static Representative iota(Distribution u);
  static Representative sigma(SmoothExpr f);
  static Representative sum(std::vector<Representative> children);
  static Representative prod(std::vector<Representative> children);
  static Representative intpow(Representative base, int k);
  static Representative deriv(Representative child, int m);

  RepKind kind() const { return kind_; }
  const Distribution& dist() const { return dist_; }
  const SmoothExpr& smooth() const { return smooth_; }
  const std::vector<Representative>& children() const { return children_; }
  int power() const { return k_; }
  int deriv_order() const { return k_; }

  std::string describe() const;

 private:
  RepKind kind_ = RepKind::Sigma;
  Distribution dist_ = Distribution::polynomial({0.0});
  SmoothExpr smooth_;
  std::vector<Representative> children_;
  int k_ = 0;
};

// Evaluate the representative at one rung of the scale: substitute the
// kernel, producing the smooth function x -> R(phi_eps)(x).  Dirac
// embeddings become closed-form kernel sections; piecewise-polynomial
// embeddings evaluate by inner quadrature at tolerance inner_cfg.
SmoothExpr realize(const Representative& r, const Kernel1D& k, const QuadConfig& inner_cfg = {});
SmoothExpr realize(const Representative& r, const KernelSpec& spec, double eps,
                   const QuadConfig& inner_cfg = {});

// <realized, probe>: integral of realized * probe, top-level sums integrated
// term by term, each clipped to its own support and the probe's support.
double pair_realized(const SmoothExpr& realized, const SmoothExpr& probe,
                     const QuadConfig& cfg = {});

// <R(phi_eps), probe> at one epsilon.  The outer integral runs at cfg; inner
// mollification integrals run three decades tighter.
double theta_pairing(const Representative& r, const KernelSpec& spec, double eps,
                     const SmoothExpr& probe, const QuadConfig& cfg = {});

}  // namespace colombeau
