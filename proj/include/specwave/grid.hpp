#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "specwave/quadrature.hpp"
#include "specwave/types.hpp"

namespace specwave {

// Analytic Fourier data attached to a line function, convention
// f_hat(k) = int e^{-2 pi i k x} f(x) dx. poles lists the singularities of
// eval in the complex k-plane so quadratures can be graded around them.
struct FourierTransform {
  std::function<cplx(double)> eval;
  std::vector<cplx> poles;
};

class GridFunction {
 public:
  GridFunction(RulePtr rule, std::vector<cplx> values,
               std::optional<FourierTransform> transform = std::nullopt);

  static GridFunction sample(RulePtr rule, const std::function<cplx(double)>& f,
                             std::optional<FourierTransform> transform = std::nullopt);

  const QuadratureRule& rule() const { return *rule_; }
  const RulePtr& rule_ptr() const { return rule_; }
  const std::vector<cplx>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  cplx operator[](std::size_t i) const { return values_[i]; }
  const std::optional<FourierTransform>& transform() const { return transform_; }

  // True when every imaginary part is exactly zero.
  bool is_real() const;
  bool is_finite() const;

 private:
  RulePtr rule_;
  std::vector<cplx> values_;
  std::optional<FourierTransform> transform_;
};

bool same_grid(const QuadratureRule& a, const QuadratureRule& b);
void require_same_grid(const QuadratureRule& a, const QuadratureRule& b, const char* what);

GridFunction operator+(const GridFunction& a, const GridFunction& b);
GridFunction operator-(const GridFunction& a, const GridFunction& b);
GridFunction operator*(cplx s, const GridFunction& a);
GridFunction conj(const GridFunction& a);
GridFunction imag_part(const GridFunction& a);

// sum_i w_i u_i conj(v_i): linear in u, conjugate linear in v.
cplx inner_product(const GridFunction& u, const GridFunction& v);
double norm(const GridFunction& u);
double max_abs(const GridFunction& u);
double max_abs_imag(const GridFunction& u);

// n-th Dirichlet mode on (-1, 1): cos(n pi y / 2) for odd n, sin(n pi y / 2) for
// even n. Orthonormal in L2(-1, 1).
double transverse_mode(int n, double y);

// Function on the strip R x (-1, 1) stored as coefficients of the transverse
// modes n = 1..N_y, each a line function on a shared x grid.
class StripGridFunction {
 public:
  StripGridFunction(std::vector<GridFunction> modes, double transverse_tail = 0.0);

  // f(x, y) = g(x) h(y), h projected onto N_y modes.
  static StripGridFunction separable(const GridFunction& g, const std::function<double(double)>& h,
                                     int n_modes);

  int transverse_modes() const { return static_cast<int>(modes_.size()); }
  const GridFunction& mode(int n) const { return modes_.at(n - 1); }
  const std::vector<GridFunction>& modes() const { return modes_; }
  const QuadratureRule& x_grid() const { return modes_.front().rule(); }

  // Relative L2 energy of the transverse modes beyond the cutoff (estimated
  // at projection time).
  double transverse_tail() const { return tail_; }

  // sum_i w_i |c_n(x_i)|^2 per mode, optionally restricted to a window.
  std::vector<double> mode_energies(std::optional<Interval> window = std::nullopt) const;
  cplx evaluate(std::size_t ix, double y) const;

  bool is_real() const;
  bool is_finite() const;

 private:
  std::vector<GridFunction> modes_;
  double tail_ = 0.0;
};

StripGridFunction operator+(const StripGridFunction& a, const StripGridFunction& b);
StripGridFunction operator-(const StripGridFunction& a, const StripGridFunction& b);
StripGridFunction operator*(cplx s, const StripGridFunction& a);
StripGridFunction conj(const StripGridFunction& a);
StripGridFunction imag_part(const StripGridFunction& a);
cplx inner_product(const StripGridFunction& u, const StripGridFunction& v);
double norm(const StripGridFunction& u);
double max_abs_imag(const StripGridFunction& u);

}  // namespace specwave
