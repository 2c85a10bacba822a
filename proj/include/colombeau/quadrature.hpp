#pragma once

#include <functional>
#include <optional>

#include "colombeau/errors.hpp"

namespace colombeau {

// Closed bounded interval [lo, hi] with lo <= hi, both finite.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  Interval() = default;
  Interval(double lo_, double hi_);

  double width() const { return hi - lo; }
  double midpoint() const { return 0.5 * (lo + hi); }
  bool contains(double x) const { return lo <= x && x <= hi; }
  bool degenerate() const { return lo == hi; }
};

// Empty optional means the intervals do not overlap.
std::optional<Interval> intersect(const Interval& a, const Interval& b);
Interval hull(const Interval& a, const Interval& b);

struct QuadConfig {
  double abs_tol = 1e-10;
  int max_depth = 40;
};

// Adaptive composite Simpson on [iv.lo, iv.hi]: each panel is bisected until
// the Richardson error estimate meets the panel's share of abs_tol, and the
// extrapolated value is accumulated.  Deterministic: identical inputs give
// bit-identical results.  Throws DepthExceeded when a panel cannot converge
// within max_depth bisections.
double integrate(const std::function<double(double)>& f, const Interval& iv,
                 const QuadConfig& cfg = {});

}  // namespace colombeau
