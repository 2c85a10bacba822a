#pragma once

// Independent reference routes for the test suite: fixed-grid composite
// Simpson integration, central finite differences, and constants frozen
// from a 30-digit arbitrary-precision computation of the bump profile
// b(t) = exp(-1/(1-t^2)) on (-1,1).  None of this goes through the adaptive
// integrator or the symbolic derivative engine under test.

#include <cmath>
#include <functional>

namespace oracle {

// Composite Simpson on n panels (n even).  Deliberately non-adaptive.
inline double composite_simpson(const std::function<double(double)>& f, double a, double b,
                                int n = 4096) {
  if (n % 2) ++n;
  const double h = (b - a) / n;
  double acc = f(a) + f(b);
  for (int i = 1; i < n; ++i) acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

inline double central_diff1(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

inline double central_diff2(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

// Frozen 21-digit values.
inline constexpr double kI0 = 0.44399381616807943782;      // integral of b over (-1,1)
inline constexpr double kN = 2.2522836210435810105;        // 1/kI0
inline constexpr double kMu2 = 0.15811363626379823023;     // 2nd moment of b/kI0
inline constexpr double kMu4 = 0.052981818022077168365;    // 4th moment of b/kI0
inline constexpr double kMu6 = 0.023062986781933047099;    // 6th moment of b/kI0
inline constexpr double kSkewMu1 = 0.079056818131899115114;  // 1st moment of skew profile
inline constexpr double kBump0 = 0.3678794411714423216;      // b(0) = 1/e
inline constexpr double kBumpD1At05 = -0.46861713442795870236;  // b'(1/2)
inline constexpr double kBumpD2At03 = -0.94827444723250390272;  // b''(3/10)
inline constexpr double kHalfBump0 = 0.1839397205857211608;     // b(0)/2

inline double raw_bump(double t) {
  return std::abs(t) < 1.0 ? std::exp(-1.0 / (1.0 - t * t)) : 0.0;
}

}  // namespace oracle
