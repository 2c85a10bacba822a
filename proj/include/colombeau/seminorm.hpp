#pragma once

#include <vector>

#include "colombeau/distribution.hpp"
#include "colombeau/mollifier.hpp"

namespace colombeau {

// Density of the x-sampling grid.  Grids use power-of-two interval counts so
// doubling points_per_unit refines a grid into a nested one and reported
// sups can only grow.
struct GridSpec {
  int points_per_unit = 512;
};

inline constexpr int kKernelGridIntervals = 1024;

// Nodes lo + i*(hi-lo)/n for i = 0..n with n = pow2ceil(ceil(width * ppu)).
std::vector<double> grid_nodes(const Interval& K, const GridSpec& g);

// sup over the grid on K of |f^(j)(x)| for j = 0..m.
double norm_f(const SmoothExpr& f, const Interval& K, int m, const GridSpec& g = {});

// sup over x in K, y in L of |d^a/dx^a d^b/dy^b kernel(x)(y)| for a <= m,
// b <= l.  The kernels here are translation kernels k(x, y) = g(s(y-x)), so
// the mixed derivative reduces to |g^(a+b)(t)| and the sup is taken on a
// grid over the kernel's own support intersected with the reachable t-range.
double norm_kernel(const KernelSpec& spec, double eps, const Interval& K, int m,
                   const Interval& L, int l, const GridSpec& g = {});

// sup over x in K, a <= c, f in B of |<f, d^a/dx^a kernel(x)> - f^(a)(x)|.
// Smooth polynomial members against Model/ScaledAq kernels evaluate through
// the exact moment expansion; everything else pairs by quadrature.
double norm_gap(const KernelSpec& spec, double eps, const Interval& K, int c,
                const FunctionFamily& B, const GridSpec& g = {}, const QuadConfig& cfg = {});

// Polynomial with nonnegative coefficients in variables y_0..y_k, z_0..z_k.
struct PosMonomial {
  double coeff = 0.0;
  std::vector<int> y_exps;
  std::vector<int> z_exps;
};

struct PosPolynomial {
  std::vector<PosMonomial> monomials;

  void validate() const;  // throws std::invalid_argument
};

// True iff lambda vanishes identically when all z-variables are set to 0,
// i.e. every monomial with nonzero coefficient carries a positive z-power.
bool in_Ik(const PosPolynomial& lambda, int k);

}  // namespace colombeau
