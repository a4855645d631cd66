#pragma once

#include <span>
#include <vector>

#include "specwave/execution.hpp"
#include "specwave/grid.hpp"

namespace specwave {

struct KRule {
  std::vector<double> k;
  std::vector<double> w;
};

// Composite Gauss-Legendre rule on [-k_max, k_max]. Base panels hold 16 nodes,
// n_k / 16 of them, narrowed to width <= 1 / x_extent so that e^{2 pi i k x}
// stays resolved, and graded geometrically around the real part of every pole
// closer to the axis than a base panel.
KRule build_k_rule(double k_max, int n_k, double x_extent, std::span<const cplx> poles);

// F(k_j) = sum_i w_i f_i e^{-2 pi i k_j x_i}.
std::vector<cplx> forward_transform(const QuadratureRule& x, std::span<const cplx> values,
                                    std::span<const double> k, Execution exec);

// u(x_i) = sum_j c_j e^{2 pi i k_j x_i}; c_j already carries the k weights.
std::vector<cplx> synthesize(std::span<const double> k, std::span<const cplx> c,
                             std::span<const double> x, Execution exec);

// Analytic transform when attached, quadrature over the grid otherwise.
std::vector<cplx> transform_values(const GridFunction& f, std::span<const double> k,
                                   Execution exec);

}  // namespace specwave
