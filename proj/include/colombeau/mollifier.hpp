#pragma once

#include <string>
#include <vector>

#include "colombeau/expr.hpp"

namespace colombeau {

inline constexpr double kDefaultMomentTol = 1e-9;
inline constexpr int kMomentCount = 17;  // stored moments 0..16

// Compactly supported smooth density with cached moments.  moments[] is the
// snapped copy: entries within moment_tol of 0 (or of 1, for moment 0) are
// replaced by the exact value so downstream cancellations are exact;
// raw_moments[] keeps the quadrature output untouched.
struct Mollifier {
  std::string name;
  SmoothExpr expr;
  Interval support{-1.0, 1.0};
  std::vector<double> raw_moments;
  std::vector<double> moments;
  int q = 0;  // largest k with moment 0 == 1 and moments 1..k == 0 after snapping
  bool symmetric = false;

  double moment(int j) const;  // snapped; throws std::out_of_range
};

// Integrals of t^j * rho(t) over supp for j = 0 .. count-1.
std::vector<double> compute_moments(const SmoothExpr& rho, const Interval& supp, int count,
                                    double quad_tol = 1e-12);

Mollifier make_mollifier(std::string name, const SmoothExpr& rho, const Interval& supp,
                         double moment_tol = kDefaultMomentTol);

// Normalized even bump: N * exp(-1/(1-t^2)) with unit integral.
Mollifier base_bump();
// Skewed variant N * exp(-1/(1-t^2)) * (1 + t/2); unit mass, nonzero first moment.
Mollifier skew_bump();

// Multiply base by the degree-q polynomial that re-normalizes moment 0 and
// cancels moments 1..q (Hankel system, partial-pivot elimination).  Throws
// IllConditioned when the pivot ratio exceeds cond_limit; throws
// std::runtime_error if the re-integrated moments fail verification.
Mollifier synth_Aq(const Mollifier& base, int q, double cond_limit = 1e12,
                   double moment_tol = kDefaultMomentTol);

// Independent re-integration of the first J+1 moments of m.
std::vector<double> moments(const Mollifier& m, int J);

enum class KernelKind { Model, LogDamped, ScaledAq };

const char* kernel_kind_name(KernelKind k);

struct KernelSpec {
  KernelKind kind = KernelKind::Model;
  Mollifier base;
  SmoothExpr cutoff = cutoff_s();  // used by LogDamped only; 1 on [-1,1], support in [-2,2]

  double max_eps() const;  // largest admissible epsilon for this kind
};

// Every kernel used here is translation-structured: k(x, y) = g(s*(y - x))
// with s = +1 or -1.
struct Kernel1D {
  SmoothExpr g;
  int s = 1;
};

// eps^-1 rho(t/eps); requires 0 < eps <= 1.
SmoothExpr scaled_profile(const SmoothExpr& rho, double eps);
// chi(t*|ln eps|) * eps^-1 * rho(t/eps); requires 0 < eps <= exp(-1) and a
// chi that is 1 on [-1,1] with support inside [-2,2].
SmoothExpr log_damped_profile(const SmoothExpr& rho, const SmoothExpr& chi, double eps);

SmoothExpr scale(const Mollifier& m, double eps);
SmoothExpr log_damped(const Mollifier& rho, const SmoothExpr& chi, double eps);

Kernel1D kernel_profile(const KernelSpec& spec, double eps);  // throws BadEpsilon
SmoothExpr kernel_at(const Kernel1D& k, double x);            // y -> k(x, y)
SmoothExpr kernel_at(const KernelSpec& spec, double eps, double x);
SmoothExpr kernel_at_dx(const Kernel1D& k, double x, int alpha);  // y -> d^alpha/dx^alpha k(x, y)

}  // namespace colombeau
