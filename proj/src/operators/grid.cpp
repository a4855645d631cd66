#include "specwave/grid.hpp"

#include <algorithm>
#include <cmath>

#include "specwave/errors.hpp"

namespace specwave {

GridFunction::GridFunction(RulePtr rule, std::vector<cplx> values,
                           std::optional<FourierTransform> transform)
    : rule_(std::move(rule)), values_(std::move(values)), transform_(std::move(transform)) {
  if (!rule_) throw InvalidArgument("GridFunction: null rule");
  if (values_.size() != rule_->size())
    throw GridMismatch("GridFunction: " + std::to_string(values_.size()) + " values for " +
                       std::to_string(rule_->size()) + " nodes");
}

GridFunction GridFunction::sample(RulePtr rule, const std::function<cplx(double)>& f,
                                  std::optional<FourierTransform> transform) {
  std::vector<cplx> v(rule->size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(rule->nodes[i]);
  return GridFunction(std::move(rule), std::move(v), std::move(transform));
}

bool GridFunction::is_real() const {
  return std::all_of(values_.begin(), values_.end(), [](cplx v) { return v.imag() == 0.0; });
}

bool GridFunction::is_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](cplx v) {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
  });
}

bool same_grid(const QuadratureRule& a, const QuadratureRule& b) {
  if (&a == &b) return true;
  return a.nodes == b.nodes && a.weights == b.weights;
}

void require_same_grid(const QuadratureRule& a, const QuadratureRule& b, const char* what) {
  if (!same_grid(a, b)) throw GridMismatch(std::string(what) + ": functions live on different grids");
}

namespace {

std::vector<cplx> merged_poles(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  std::vector<cplx> out = a;
  for (const cplx& p : b)
    if (std::none_of(out.begin(), out.end(), [&](cplx q) { return q == p; })) out.push_back(p);
  return out;
}

std::optional<FourierTransform> combine(const GridFunction& a, const GridFunction& b,
                                        double sign) {
  if (!a.transform() || !b.transform()) return std::nullopt;
  auto fa = a.transform()->eval, fb = b.transform()->eval;
  return FourierTransform{[fa, fb, sign](double k) { return fa(k) + sign * fb(k); },
                          merged_poles(a.transform()->poles, b.transform()->poles)};
}

std::optional<FourierTransform> conj_transform(const std::optional<FourierTransform>& t) {
  if (!t) return std::nullopt;
  auto f = t->eval;
  std::vector<cplx> poles;
  for (const cplx& p : t->poles) poles.push_back(-std::conj(p));
  return FourierTransform{[f](double k) { return std::conj(f(-k)); }, poles};
}

}  // namespace

GridFunction operator+(const GridFunction& a, const GridFunction& b) {
  require_same_grid(a.rule(), b.rule(), "operator+");
  std::vector<cplx> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[i] + b[i];
  return GridFunction(a.rule_ptr(), std::move(v), combine(a, b, 1.0));
}

GridFunction operator-(const GridFunction& a, const GridFunction& b) {
  require_same_grid(a.rule(), b.rule(), "operator-");
  std::vector<cplx> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[i] - b[i];
  return GridFunction(a.rule_ptr(), std::move(v), combine(a, b, -1.0));
}

GridFunction operator*(cplx s, const GridFunction& a) {
  std::vector<cplx> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = s * a[i];
  std::optional<FourierTransform> t;
  if (a.transform()) {
    auto f = a.transform()->eval;
    t = FourierTransform{[f, s](double k) { return s * f(k); }, a.transform()->poles};
  }
  return GridFunction(a.rule_ptr(), std::move(v), std::move(t));
}

GridFunction conj(const GridFunction& a) {
  std::vector<cplx> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::conj(a[i]);
  return GridFunction(a.rule_ptr(), std::move(v), conj_transform(a.transform()));
}

GridFunction imag_part(const GridFunction& a) {
  std::vector<cplx> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[i].imag();
  std::optional<FourierTransform> t;
  if (a.transform()) {
    auto f = a.transform()->eval;
    auto c = conj_transform(a.transform());
    t = FourierTransform{[f](double k) { return (f(k) - std::conj(f(-k))) / (2.0 * I); },
                         merged_poles(a.transform()->poles, c->poles)};
  }
  return GridFunction(a.rule_ptr(), std::move(v), std::move(t));
}

cplx inner_product(const GridFunction& u, const GridFunction& v) {
  require_same_grid(u.rule(), v.rule(), "inner_product");
  const auto& w = u.rule().weights;
  cplx s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += w[i] * u[i] * std::conj(v[i]);
  return s;
}

double norm(const GridFunction& u) {
  const auto& w = u.rule().weights;
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += w[i] * std::norm(u[i]);
  return std::sqrt(s);
}

double max_abs(const GridFunction& u) {
  double m = 0.0;
  for (cplx v : u.values()) m = std::max(m, std::abs(v));
  return m;
}

double max_abs_imag(const GridFunction& u) {
  double m = 0.0;
  for (cplx v : u.values()) m = std::max(m, std::abs(v.imag()));
  return m;
}

double transverse_mode(int n, double y) {
  const double arg = n * pi * y / 2.0;
  return n % 2 == 1 ? std::cos(arg) : std::sin(arg);
}

StripGridFunction::StripGridFunction(std::vector<GridFunction> modes, double transverse_tail)
    : modes_(std::move(modes)), tail_(transverse_tail) {
  if (modes_.empty()) throw InvalidArgument("StripGridFunction: need at least one mode");
  for (const auto& m : modes_) require_same_grid(m.rule(), modes_.front().rule(), "StripGridFunction");
}

StripGridFunction StripGridFunction::separable(const GridFunction& g,
                                               const std::function<double(double)>& h,
                                               int n_modes) {
  if (n_modes < 1) throw InvalidArgument("StripGridFunction::separable: need N_y >= 1");
  const QuadratureRule y = gauss_legendre(std::max(128, 8 * n_modes), -1.0, 1.0, Execution::serial);
  double energy = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) energy += y.weights[i] * h(y.nodes[i]) * h(y.nodes[i]);
  std::vector<GridFunction> modes;
  double captured = 0.0;
  for (int n = 1; n <= n_modes; ++n) {
    double c = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i)
      c += y.weights[i] * h(y.nodes[i]) * transverse_mode(n, y.nodes[i]);
    captured += c * c;
    modes.push_back(cplx(c) * g);
  }
  const double tail = energy > 0.0 ? std::max(0.0, (energy - captured) / energy) : 0.0;
  return StripGridFunction(std::move(modes), tail);
}

std::vector<double> StripGridFunction::mode_energies(std::optional<Interval> window) const {
  std::vector<double> e;
  const auto& rule = x_grid();
  for (const auto& m : modes_) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i)
      if (!window || window->contains(rule.nodes[i])) s += rule.weights[i] * std::norm(m[i]);
    e.push_back(s);
  }
  return e;
}

cplx StripGridFunction::evaluate(std::size_t ix, double y) const {
  cplx s = 0.0;
  for (int n = 1; n <= transverse_modes(); ++n) s += mode(n)[ix] * transverse_mode(n, y);
  return s;
}

bool StripGridFunction::is_real() const {
  return std::all_of(modes_.begin(), modes_.end(), [](const GridFunction& m) { return m.is_real(); });
}

bool StripGridFunction::is_finite() const {
  return std::all_of(modes_.begin(), modes_.end(), [](const GridFunction& m) { return m.is_finite(); });
}

namespace {

template <class Op>
StripGridFunction modewise(const StripGridFunction& a, const StripGridFunction& b, Op op) {
  if (a.transverse_modes() != b.transverse_modes())
    throw GridMismatch("strip functions with different transverse cutoffs");
  std::vector<GridFunction> out;
  for (int n = 1; n <= a.transverse_modes(); ++n) out.push_back(op(a.mode(n), b.mode(n)));
  return StripGridFunction(std::move(out), std::max(a.transverse_tail(), b.transverse_tail()));
}

}  // namespace

StripGridFunction operator+(const StripGridFunction& a, const StripGridFunction& b) {
  return modewise(a, b, [](const GridFunction& x, const GridFunction& y) { return x + y; });
}

StripGridFunction operator-(const StripGridFunction& a, const StripGridFunction& b) {
  return modewise(a, b, [](const GridFunction& x, const GridFunction& y) { return x - y; });
}

StripGridFunction operator*(cplx s, const StripGridFunction& a) {
  std::vector<GridFunction> out;
  for (const auto& m : a.modes()) out.push_back(s * m);
  return StripGridFunction(std::move(out), a.transverse_tail());
}

StripGridFunction conj(const StripGridFunction& a) {
  std::vector<GridFunction> out;
  for (const auto& m : a.modes()) out.push_back(conj(m));
  return StripGridFunction(std::move(out), a.transverse_tail());
}

StripGridFunction imag_part(const StripGridFunction& a) {
  std::vector<GridFunction> out;
  for (const auto& m : a.modes()) out.push_back(imag_part(m));
  return StripGridFunction(std::move(out), a.transverse_tail());
}

cplx inner_product(const StripGridFunction& u, const StripGridFunction& v) {
  if (u.transverse_modes() != v.transverse_modes())
    throw GridMismatch("inner_product: strip functions with different transverse cutoffs");
  cplx s = 0.0;
  for (int n = 1; n <= u.transverse_modes(); ++n) s += inner_product(u.mode(n), v.mode(n));
  return s;
}

double norm(const StripGridFunction& u) {
  double s = 0.0;
  for (const auto& m : u.modes()) s += norm(m) * norm(m);
  return std::sqrt(s);
}

double max_abs_imag(const StripGridFunction& u) {
  double m = 0.0;
  for (const auto& g : u.modes()) m = std::max(m, max_abs_imag(g));
  return m;
}

}  // namespace specwave
