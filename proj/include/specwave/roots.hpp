#pragma once

#include <cmath>
#include <vector>

#include "specwave/types.hpp"

namespace specwave {

struct CubicRoot {
  double x;
  int multiplicity;  // 2 for the degenerate roots at x = +-1/sqrt(3)
};

// Real roots of x^3 - x - lambda strictly inside (interval.lo, interval.hi),
// ascending. Bracketed bisection on the monotone pieces, then Newton polish.
// Within merge_tol of a critical value the close pair is reported once as a
// double root.
std::vector<CubicRoot> cubic_roots_in_interval(double lambda, Interval interval,
                                               double merge_tol = 1e-13);

inline double cubic(double x) { return x * x * x - x; }
inline double cubic_derivative(double x) { return 3.0 * x * x - 1.0; }

// Edge of the spectrum of multiplication by x^3 - x on (-1, 1): 2 sqrt(3) / 9.
inline const double cubic_edge = 2.0 * std::sqrt(3.0) / 9.0;

}  // namespace specwave
