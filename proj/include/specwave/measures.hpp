#pragma once

#include <functional>
#include <span>
#include <vector>

#include "specwave/kernels.hpp"
#include "specwave/types.hpp"

namespace specwave {

using RealFunction = std::function<double(double)>;
using TransformFunction = std::function<cplx(double)>;

struct DensityFunction {
  std::function<double(double)> evaluate;
  std::vector<double> singular_points;  // sorted
  Interval valid_interval;              // open; ends may be infinite
  // Optional: density at anchor + offset for an anchor in singular_points,
  // accurate when the offset is far below the rounding of the anchor.
  std::function<double(double anchor, double offset)> near_singular;
};

// sum over interior roots x_k of x^3 - x = lambda of f(x_k) g(x_k) / |p'(x_k)|.
// Zero outside the spectral interval.
double rho_multiplication(const RealFunction& f, const RealFunction& g, double lambda);
DensityFunction multiplication_density(RealFunction f, RealFunction g);

// (1 / (4 pi sqrt(lambda))) [F(k0) conj G(k0) + F(-k0) conj G(-k0)], k0 = sqrt(lambda) / (2 pi).
// Real part returned; zero for lambda < 0.
double rho_free_laplacian(const TransformFunction& f_hat, const TransformFunction& g_hat,
                          double lambda);
DensityFunction free_laplacian_density(TransformFunction f_hat, TransformFunction g_hat);

// Sum of the two-branch terms of every open transverse channel (n pi / 2)^2 < lambda,
// each from the x-transform of the n-th transverse coefficient.
double rho_strip(std::span<const TransformFunction> f_hat_modes, double lambda);
double rho_strip(std::span<const TransformFunction> f_hat_modes,
                 std::span<const TransformFunction> g_hat_modes, double lambda);
DensityFunction strip_density(std::vector<TransformFunction> f_hat_modes,
                              std::vector<TransformFunction> g_hat_modes);

// [K_eps * rho](lambda) by adaptive quadrature on panels that never straddle a
// singular point; inverse square-root endpoints are removed by a cosine map and
// infinite ends by a rational map.
double smoothed_density_oracle(const DensityFunction& density, const RationalKernel& K, double eps,
                               double lambda);

}  // namespace specwave
