#include "specwave/measures.hpp"

#include <algorithm>
#include <cmath>

#include "specwave/errors.hpp"
#include "specwave/operators.hpp"
#include "specwave/quadrature.hpp"
#include "specwave/roots.hpp"

namespace specwave {

namespace {

void reject_singular(double lambda, std::span<const double> points, const char* what) {
  for (double s : points)
    if (std::abs(lambda - s) < 1e-12)
      throw SingularPoint(std::string(what) + ": lambda = " + std::to_string(lambda) +
                          " is a singular point of the density");
}

cplx two_branch(const TransformFunction& f, const TransformFunction& g, double s) {
  const double k0 = s / (2.0 * pi);
  return (f(k0) * std::conj(g(k0)) + f(-k0) * std::conj(g(-k0))) / (4.0 * pi * s);
}

// Unchecked evaluations used inside quadratures, which approach singular
// points arbitrarily closely but never hit them.
double multiplication_impl(const RealFunction& f, const RealFunction& g, double lambda) {
  if (std::abs(lambda) >= cubic_edge) return 0.0;
  double s = 0.0;
  // No merging: the close pair next to a fold carries an integrable but
  // non-negligible 1/sqrt mass.
  for (const CubicRoot& r : cubic_roots_in_interval(lambda, {-1.0, 1.0}, 0.0))
    if (r.multiplicity == 1) s += f(r.x) * g(r.x) / std::abs(cubic_derivative(r.x));
  return s;
}

// Close to the fold value p(c), c = -+1/sqrt(3), the merging roots are c + d
// with d^2 (3c + d) = offset; |p'(c + d)| = |d (6c + 3d)|.
double multiplication_near(const RealFunction& f, const RealFunction& g, double anchor,
                           double offset) {
  const bool fold = std::abs(std::abs(anchor) - cubic_edge) < 1e-14;
  if (!fold || std::abs(offset) > 1e-4) return multiplication_impl(f, g, anchor + offset);
  const double c = anchor < 0.0 ? 1.0 / std::sqrt(3.0) : -1.0 / std::sqrt(3.0);
  if (offset / c <= 0.0) return 0.0;
  double s = 0.0;
  double pair_sum = 0.0;
  for (double sign : {-1.0, 1.0}) {
    double d = sign * std::sqrt(offset / (3.0 * c));
    for (int it = 0; it < 60; ++it) {
      const double next = sign * std::sqrt(offset / (3.0 * c + d));
      if (next == d) break;
      d = next;
    }
    const double x = c + d;
    pair_sum += d;
    s += f(x) * g(x) / std::abs(d * (6.0 * c + 3.0 * d));
  }
  const double third = -(2.0 * c + pair_sum);
  if (std::abs(third) < 1.0) s += f(third) * g(third) / std::abs(cubic_derivative(third));
  return s;
}

double free_laplacian_impl(const TransformFunction& f_hat, const TransformFunction& g_hat,
                           double lambda) {
  if (lambda <= 0.0) return 0.0;
  return two_branch(f_hat, g_hat, std::sqrt(lambda)).real();
}

double strip_impl(std::span<const TransformFunction> f_hat_modes,
                  std::span<const TransformFunction> g_hat_modes, double lambda) {
  const std::size_t n_modes = std::min(f_hat_modes.size(), g_hat_modes.size());
  cplx s = 0.0;
  for (std::size_t n = 1; n <= n_modes; ++n) {
    const double gap = lambda - strip_threshold(static_cast<int>(n));
    if (gap <= 0.0) break;
    s += two_branch(f_hat_modes[n - 1], g_hat_modes[n - 1], std::sqrt(gap));
  }
  return s.real();
}

}  // namespace

double rho_multiplication(const RealFunction& f, const RealFunction& g, double lambda) {
  const double singular[] = {-cubic_edge, 0.0, cubic_edge};
  reject_singular(lambda, singular, "rho_multiplication");
  return multiplication_impl(f, g, lambda);
}

DensityFunction multiplication_density(RealFunction f, RealFunction g) {
  return {[f, g](double t) { return multiplication_impl(f, g, t); },
          {-cubic_edge, 0.0, cubic_edge},
          {-cubic_edge, cubic_edge},
          [f, g](double anchor, double offset) { return multiplication_near(f, g, anchor, offset); }};
}

double rho_free_laplacian(const TransformFunction& f_hat, const TransformFunction& g_hat,
                          double lambda) {
  const double singular[] = {0.0};
  reject_singular(lambda, singular, "rho_free_laplacian");
  return free_laplacian_impl(f_hat, g_hat, lambda);
}

DensityFunction free_laplacian_density(TransformFunction f_hat, TransformFunction g_hat) {
  return {[f_hat, g_hat](double t) { return free_laplacian_impl(f_hat, g_hat, t); },
          {0.0},
          {0.0, infinity}};
}

double rho_strip(std::span<const TransformFunction> f_hat_modes, double lambda) {
  return rho_strip(f_hat_modes, f_hat_modes, lambda);
}

double rho_strip(std::span<const TransformFunction> f_hat_modes,
                 std::span<const TransformFunction> g_hat_modes, double lambda) {
  const std::size_t n_modes = std::min(f_hat_modes.size(), g_hat_modes.size());
  std::vector<double> thresholds;
  for (std::size_t n = 1; n <= n_modes; ++n) thresholds.push_back(strip_threshold(static_cast<int>(n)));
  reject_singular(lambda, thresholds, "rho_strip");
  return strip_impl(f_hat_modes, g_hat_modes, lambda);
}

DensityFunction strip_density(std::vector<TransformFunction> f_hat_modes,
                              std::vector<TransformFunction> g_hat_modes) {
  std::vector<double> thresholds;
  const std::size_t n_modes = std::min(f_hat_modes.size(), g_hat_modes.size());
  for (std::size_t n = 1; n <= n_modes; ++n) thresholds.push_back(strip_threshold(static_cast<int>(n)));
  return {[f = std::move(f_hat_modes), g = std::move(g_hat_modes)](double t) {
            return strip_impl(f, g, t);
          },
          thresholds,
          {strip_threshold(1), infinity}};
}

double smoothed_density_oracle(const DensityFunction& density, const RationalKernel& K, double eps,
                               double lambda) {
  if (!(eps > 0.0)) throw NonpositiveEpsilon("smoothed_density_oracle: eps must be positive");
  auto integrand = [&](double t) { return eval_scaled(K, eps, lambda - t) * density.evaluate(t); };
  auto is_singular = [&](double x) {
    return density.near_singular &&
           std::find(density.singular_points.begin(), density.singular_points.end(), x) !=
               density.singular_points.end();
  };

  const double lo = density.valid_interval.lo, hi = density.valid_interval.hi;
  std::vector<double> breaks;
  auto add = [&](double b) {
    if (std::isfinite(b) && b >= lo && b <= hi) breaks.push_back(b);
  };
  add(lo);
  add(hi);
  for (double s : density.singular_points) add(s);
  for (double c : {0.0, 1.0, 10.0, 100.0}) {
    add(lambda - c * eps);
    add(lambda + c * eps);
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  // Stretch the finite part so the rational maps only see smooth tails.
  const double pad = std::max(1.0, 100.0 * eps);
  if (!std::isfinite(lo)) breaks.insert(breaks.begin(), breaks.front() - pad);
  if (!std::isfinite(hi)) breaks.push_back(breaks.back() + pad);

  const double abs_tol = 1e-13, rel_tol = 1e-13;
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double a = breaks[i], b = breaks[i + 1];
    // t = a + (b - a) sin^2(theta/2) cancels inverse square-root endpoints.
    // Offsets are taken from the nearer end to keep them accurate.
    const bool sing_a = is_singular(a), sing_b = is_singular(b);
    auto mapped = [&](double theta) {
      const bool left = theta < 0.5 * pi;
      const double off = left ? (b - a) * std::pow(std::sin(0.5 * theta), 2)
                              : -(b - a) * std::pow(std::cos(0.5 * theta), 2);
      const double t = left ? a + off : b + off;
      const double jac = 0.5 * (b - a) * std::sin(theta);
      if (off == 0.0 || !(t >= a && t <= b)) return 0.0;
      if (left ? sing_a : sing_b)
        return eval_scaled(K, eps, lambda - t) * density.near_singular(left ? a : b, off) * jac;
      if (!(t > a && t < b)) return 0.0;
      return integrand(t) * jac;
    };
    total += integrate_adaptive(mapped, 0.0, pi, abs_tol, rel_tol).value;
  }
  if (!std::isfinite(hi)) {
    const double a = breaks.back();
    auto mapped = [&](double s) {
      if (s >= 1.0) return 0.0;
      const double t = a + s / (1.0 - s);
      return integrand(t) / ((1.0 - s) * (1.0 - s));
    };
    total += integrate_adaptive(mapped, 0.0, 1.0, abs_tol, rel_tol).value;
  }
  if (!std::isfinite(lo)) {
    const double b = breaks.front();
    auto mapped = [&](double s) {
      if (s >= 1.0) return 0.0;
      const double t = b - s / (1.0 - s);
      return integrand(t) / ((1.0 - s) * (1.0 - s));
    };
    total += integrate_adaptive(mapped, 0.0, 1.0, abs_tol, rel_tol).value;
  }
  return total;
}

}  // namespace specwave
