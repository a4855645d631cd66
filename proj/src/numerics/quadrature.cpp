#include "specwave/quadrature.hpp"

#include <array>
#include <cmath>
#include <queue>
#include <vector>

#include "specwave/errors.hpp"

namespace specwave {

namespace {

// Legendre P_n(x) and its derivative by the three-term recurrence.
std::pair<double, double> legendre_with_derivative(int n, double x) {
  double p0 = 1.0;
  double p1 = x;
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  const double dp = n * (x * p1 - p0) / (x * x - 1.0);
  return {p1, dp};
}

void legendre_root(int n, int i, double& x, double& w) {
  x = std::cos(pi * (i + 0.75) / (n + 0.5));
  double dp = 0.0;
  for (int it = 0; it < 100; ++it) {
    auto [p, d] = legendre_with_derivative(n, x);
    const double dx = p / d;
    x -= dx;
    dp = d;
    if (std::abs(dx) < 1e-16) break;
  }
  dp = legendre_with_derivative(n, x).second;
  w = 2.0 / ((1.0 - x * x) * dp * dp);
}

}  // namespace

QuadratureRule gauss_legendre(int n, double a, double b, Execution exec) {
  if (!(a < b)) throw InvalidInterval("gauss_legendre: need a < b");
  if (n < 1) throw InvalidArgument("gauss_legendre: need n >= 1");

  QuadratureRule rule;
  rule.interval = {a, b};
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  if (n == 1) {
    rule.nodes[0] = mid;
    rule.weights[0] = b - a;
    return rule;
  }

  const int count = (n + 1) / 2;
  std::vector<double> x(count), w(count);
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < count; ++i) legendre_root(n, i, x[i], w[i]);
  } else {
    for (int i = 0; i < count; ++i) legendre_root(n, i, x[i], w[i]);
  }
  if (n % 2 == 1) x[count - 1] = 0.0;

  for (int i = 0; i < count; ++i) {
    rule.nodes[n - 1 - i] = mid + half * x[i];
    rule.nodes[i] = mid - half * x[i];
    rule.weights[n - 1 - i] = half * w[i];
    rule.weights[i] = half * w[i];
  }
  return rule;
}

QuadratureRule composite_gauss_legendre(std::span<const double> breaks, int q) {
  if (breaks.size() < 2) throw InvalidArgument("composite_gauss_legendre: need two breaks");
  const QuadratureRule ref = gauss_legendre(q, -1.0, 1.0, Execution::serial);
  QuadratureRule rule;
  rule.interval = {breaks.front(), breaks.back()};
  rule.nodes.reserve((breaks.size() - 1) * q);
  rule.weights.reserve((breaks.size() - 1) * q);
  for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
    const double a = breaks[p], b = breaks[p + 1];
    if (!(a < b)) throw InvalidInterval("composite_gauss_legendre: breaks must increase");
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int i = 0; i < q; ++i) {
      rule.nodes.push_back(mid + half * ref.nodes[i]);
      rule.weights.push_back(half * ref.weights[i]);
    }
  }
  return rule;
}

QuadratureRule uniform_grid(double a, double b, int n) {
  if (!(a < b)) throw InvalidInterval("uniform_grid: need a < b");
  if (n < 1) throw InvalidArgument("uniform_grid: need n >= 1");
  QuadratureRule rule;
  rule.interval = {a, b};
  const double h = (b - a) / n;
  rule.nodes.resize(n);
  rule.weights.assign(n, h);
  for (int i = 0; i < n; ++i) rule.nodes[i] = a + (i + 0.5) * h;
  return rule;
}

namespace {

constexpr std::array<double, 8> xgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> wgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> wg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

std::pair<double, double> kronrod15(const std::function<double(double)>& f, double a,
                                    double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const double fc = f(c);
  double k = wgk[7] * fc;
  double g = wg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double f1 = f(c - h * xgk[j]);
    const double f2 = f(c + h * xgk[j]);
    k += wgk[j] * (f1 + f2);
    if (j % 2 == 1) g += wg[j / 2] * (f1 + f2);
  }
  return {k * h, std::abs((k - g) * h)};
}

}  // namespace

IntegrationResult integrate_adaptive(const std::function<double(double)>& f, double a,
                                     double b, double abs_tol, double rel_tol,
                                     int max_intervals) {
  IntegrationResult out;
  if (a == b) return out;
  // Global adaptivity: always bisect the panel with the largest error estimate.
  std::priority_queue<Panel> heap;
  auto push = [&](double l, double r) {
    auto [v, e] = kronrod15(f, l, r);
    out.evaluations += 15;
    heap.push({l, r, v, e});
    out.value += v;
    out.error += e;
  };
  push(a, b);
  while (static_cast<int>(heap.size()) < max_intervals &&
         out.error > std::max(abs_tol, rel_tol * std::abs(out.value))) {
    const Panel worst = heap.top();
    const double m = 0.5 * (worst.a + worst.b);
    if (!(m > worst.a && m < worst.b)) break;
    heap.pop();
    out.value -= worst.value;
    out.error -= worst.error;
    push(worst.a, m);
    push(m, worst.b);
  }
  // Re-sum to shed the drift of the running updates.
  out.value = 0.0;
  out.error = 0.0;
  while (!heap.empty()) {
    out.value += heap.top().value;
    out.error += heap.top().error;
    heap.pop();
  }
  return out;
}

IntegrationResult integrate_panels(const std::function<double(double)>& f,
                                   std::span<const double> breaks, double abs_tol,
                                   double rel_tol) {
  IntegrationResult out;
  if (breaks.size() < 2) return out;
  const double total = breaks.back() - breaks.front();
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double len = breaks[i + 1] - breaks[i];
    if (len <= 0.0) continue;
    auto r = integrate_adaptive(f, breaks[i], breaks[i + 1], abs_tol * len / total, rel_tol);
    out.value += r.value;
    out.error += r.error;
    out.evaluations += r.evaluations;
  }
  return out;
}

}  // namespace specwave
