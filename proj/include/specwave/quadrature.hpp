#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "specwave/execution.hpp"
#include "specwave/types.hpp"

namespace specwave {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  Interval interval;

  std::size_t size() const { return nodes.size(); }
};

using RulePtr = std::shared_ptr<const QuadratureRule>;

// n-point Gauss-Legendre rule on (a, b). Nodes by Newton iteration on the
// three-term recurrence, which stays accurate for n in the tens of thousands.
QuadratureRule gauss_legendre(int n, double a, double b,
                              Execution exec = Execution::parallel);

// q-point Gauss-Legendre on every panel [breaks[i], breaks[i+1]].
QuadratureRule composite_gauss_legendre(std::span<const double> breaks, int q);

// Midpoint rule: x_i = a + (i + 1/2) h, weights h. Used as the uniform grid of
// the line and strip operators.
QuadratureRule uniform_grid(double a, double b, int n);

template <class Rule>
RulePtr share(Rule&& rule) {
  return std::make_shared<const QuadratureRule>(std::forward<Rule>(rule));
}

struct IntegrationResult {
  double value = 0.0;
  double error = 0.0;
  int evaluations = 0;
};

// Globally adaptive bisection with a 15-point Kronrod / 7-point Gauss pair.
// Stops when the summed error estimate meets max(abs_tol, rel_tol |I|) or the
// panel count reaches max_intervals.
IntegrationResult integrate_adaptive(const std::function<double(double)>& f,
                                     double a, double b, double abs_tol,
                                     double rel_tol = 1e-13, int max_intervals = 4000);

// integrate_adaptive on each panel of breaks; no panel straddles a break.
IntegrationResult integrate_panels(const std::function<double(double)>& f,
                                   std::span<const double> breaks,
                                   double abs_tol, double rel_tol = 1e-13);

}  // namespace specwave
