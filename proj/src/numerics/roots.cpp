#include "specwave/roots.hpp"

#include <algorithm>
#include <cmath>

namespace specwave {

namespace {

double bisect_then_polish(double lambda, double l, double r) {
  double hl = cubic(l) - lambda;
  for (int it = 0; it < 200 && r - l > 1e-16 * std::max(1.0, std::abs(l)); ++it) {
    const double m = 0.5 * (l + r);
    const double hm = cubic(m) - lambda;
    if (hm == 0.0) return m;
    if ((hm < 0) == (hl < 0)) {
      l = m;
      hl = hm;
    } else {
      r = m;
    }
  }
  double x = 0.5 * (l + r);
  for (int it = 0; it < 3; ++it) {
    const double d = cubic_derivative(x);
    if (d == 0.0) break;
    const double next = x - (cubic(x) - lambda) / d;
    if (!(next > l && next < r)) break;
    x = next;
  }
  return x;
}

}  // namespace

std::vector<CubicRoot> cubic_roots_in_interval(double lambda, Interval interval,
                                               double merge_tol) {
  std::vector<CubicRoot> roots;
  const double lo = interval.lo, hi = interval.hi;
  if (!(lo < hi)) return roots;

  const double c = 1.0 / std::sqrt(3.0);
  const double tol = merge_tol * std::max(1.0, std::abs(lambda));

  // Monotone pieces of p between the critical points.
  std::vector<double> breaks{lo};
  std::vector<bool> double_root{false};
  for (double crit : {-c, c}) {
    if (crit > lo && crit < hi) {
      breaks.push_back(crit);
      double_root.push_back(std::abs(cubic(crit) - lambda) <= tol);
    }
  }
  breaks.push_back(hi);
  double_root.push_back(false);

  auto h = [&](std::size_t i) {
    return double_root[i] ? 0.0 : cubic(breaks[i]) - lambda;
  };
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (i > 0 && double_root[i]) roots.push_back({breaks[i], 2});
    const double hl = h(i), hr = h(i + 1);
    if (hl != 0.0 && hr != 0.0 && (hl < 0) != (hr < 0))
      roots.push_back({bisect_then_polish(lambda, breaks[i], breaks[i + 1]), 1});
  }
  std::sort(roots.begin(), roots.end(),
            [](const CubicRoot& a, const CubicRoot& b) { return a.x < b.x; });
  return roots;
}

}  // namespace specwave
