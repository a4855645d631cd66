#include "specwave/regression.hpp"

#include <cmath>

#include "specwave/errors.hpp"

namespace specwave {

double fit_loglog_slope(std::span<const SweepPoint> points) {
  if (points.size() < 3)
    throw InsufficientData("fit_loglog_slope: need at least 3 points, got " +
                           std::to_string(points.size()));
  double sx = 0, sy = 0;
  for (const auto& p : points) {
    if (!(p.eps > 0.0) || !(p.error > 0.0))
      throw NonpositiveValue("fit_loglog_slope: eps and error must be positive");
    sx += std::log(p.eps);
    sy += std::log(p.error);
  }
  const double n = static_cast<double>(points.size());
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (const auto& p : points) {
    const double dx = std::log(p.eps) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(p.error) - my);
  }
  if (sxx == 0.0) throw InsufficientData("fit_loglog_slope: all eps identical");
  return sxy / sxx;
}

}  // namespace specwave
