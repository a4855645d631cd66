#pragma once

#include <span>

namespace specwave {

struct SweepPoint {
  double eps;
  double error;
};

// Least-squares slope of log(error) against log(eps).
double fit_loglog_slope(std::span<const SweepPoint> points);

}  // namespace specwave
