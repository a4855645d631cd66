#include <algorithm>
#include <cmath>

#include "specwave/operators.hpp"
#include "specwave/roots.hpp"

namespace specwave {

bool SpectrumInfo::contains(double x) const {
  return std::any_of(intervals.begin(), intervals.end(),
                     [x](const Interval& i) { return i.contains(x); });
}

namespace {

SpectrumInfo cubic_spectrum() {
  return {{{-cubic_edge, cubic_edge}}, {-cubic_edge, 0.0, cubic_edge}};
}

std::optional<int> cubic_multiplicity(double lambda) {
  if (std::abs(lambda) >= cubic_edge) return 0;
  return static_cast<int>(cubic_roots_in_interval(lambda, {-1.0, 1.0}).size());
}

std::vector<double> sample_symbol(const QuadratureRule& rule, const std::function<double(double)>& p) {
  std::vector<double> v(rule.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = p(rule.nodes[i]);
  return v;
}

}  // namespace

MultiplicationResolvent::MultiplicationResolvent(std::function<double(double)> symbol, RulePtr rule,
                                                 SpectrumInfo spectrum,
                                                 std::function<std::optional<int>(double)> multiplicity)
    : rule_(std::move(rule)),
      p_(sample_symbol(*rule_, symbol)),
      spectrum_(std::move(spectrum)),
      multiplicity_(std::move(multiplicity)) {}

std::optional<int> MultiplicationResolvent::multiplicity(double lambda) const {
  if (multiplicity_) return multiplicity_(lambda);
  return std::nullopt;
}

GridFunction MultiplicationResolvent::solve(cplx z, const GridFunction& f) const {
  require_same_grid(f.rule(), *rule_, "multiplication resolvent");
  std::vector<cplx> u(f.size());
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = f[i] / (p_[i] - z);
  return GridFunction(rule_, std::move(u));
}

std::unique_ptr<MultiplicationResolvent> multiplication_resolvent(int n) {
  return multiplication_resolvent(share(gauss_legendre(n, -1.0, 1.0)));
}

std::unique_ptr<MultiplicationResolvent> multiplication_resolvent(RulePtr rule) {
  return std::make_unique<MultiplicationResolvent>(cubic, std::move(rule), cubic_spectrum(),
                                                   cubic_multiplicity);
}

RulePtr graded_rule_for_level(double lambda, double min_eps, int nodes_per_panel) {
  if (!(min_eps > 0.0)) throw NonpositiveEpsilon("graded_rule_for_level: eps must be positive");
  std::vector<double> breaks;
  for (int i = 0; i <= 40; ++i) breaks.push_back(-1.0 + i * 0.05);
  for (const CubicRoot& r : cubic_roots_in_interval(lambda, {-1.0, 1.0})) {
    // Width of the resolvent peak in x; sqrt scaling next to a double root.
    const double slope = std::max(std::abs(cubic_derivative(r.x)), std::sqrt(min_eps));
    const double delta = min_eps / slope;
    breaks.push_back(r.x);
    for (double s = delta / 4.0; s < 0.05; s *= 2.0) {
      breaks.push_back(r.x - s);
      breaks.push_back(r.x + s);
    }
  }
  std::sort(breaks.begin(), breaks.end());
  std::vector<double> clean;
  for (double b : breaks) {
    if (b <= -1.0 || b >= 1.0) continue;
    if (clean.empty() || b - clean.back() > 1e-14) clean.push_back(b);
  }
  clean.insert(clean.begin(), -1.0);
  clean.push_back(1.0);
  return share(composite_gauss_legendre(clean, nodes_per_panel));
}

RankOneResolvent::RankOneResolvent(RulePtr rule)
    : rule_(std::move(rule)),
      p_(sample_symbol(*rule_, cubic)),
      g_(sample_symbol(*rule_, [](double x) { return std::exp(-x * x); })),
      spectrum_(cubic_spectrum()) {}

std::optional<int> RankOneResolvent::multiplicity(double lambda) const {
  return cubic_multiplicity(lambda);
}

GridFunction RankOneResolvent::solve(cplx z, const GridFunction& f) const {
  require_same_grid(f.rule(), *rule_, "rank-one resolvent");
  const auto& w = rule_->weights;
  // c = <R0 f, g> / (1 + <R0 g, g>) with the unconjugated pairing of the
  // discrete operator; the minus sign is pinned by the dense-oracle test.
  cplx num = 0.0, den = 1.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const cplx d = p_[i] - z;
    num += w[i] * g_[i] * f[i] / d;
    den += w[i] * g_[i] * g_[i] / d;
  }
  const cplx c = num / den;
  std::vector<cplx> u(f.size());
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = (f[i] - c * g_[i]) / (p_[i] - z);
  return GridFunction(rule_, std::move(u));
}

std::unique_ptr<RankOneResolvent> rank_one_perturbed_resolvent(int n) {
  return rank_one_perturbed_resolvent(share(gauss_legendre(n, -1.0, 1.0)));
}

std::unique_ptr<RankOneResolvent> rank_one_perturbed_resolvent(RulePtr rule) {
  return std::make_unique<RankOneResolvent>(std::move(rule));
}

}  // namespace specwave
