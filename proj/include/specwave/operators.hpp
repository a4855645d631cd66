#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "specwave/errors.hpp"
#include "specwave/execution.hpp"
#include "specwave/grid.hpp"
#include "specwave/linalg.hpp"

namespace specwave {

struct SpectrumInfo {
  std::vector<Interval> intervals;  // closed; hi may be +infinity
  std::vector<double> multiplicity_breakpoints;

  bool contains(double x) const;
};

inline constexpr double infinity = std::numeric_limits<double>::infinity();

// R(z) f = (A - z)^{-1} f for a self-adjoint A. apply() rejects real z on the
// spectrum and forwards to the operator-specific solve.
template <class Vector>
class ResolventOracle {
 public:
  virtual ~ResolventOracle() = default;

  Vector apply(cplx z, const Vector& f) const {
    if (z.imag() == 0.0 && spectrum().contains(z.real()))
      throw EvaluationOnSpectrum("resolvent requested at real z = " + std::to_string(z.real()) +
                                 " inside the spectrum");
    return solve(z, f);
  }

  virtual const SpectrumInfo& spectrum() const = 0;

  // Real coefficients: R(conj z) conj f = conj(R(z) f).
  virtual bool is_real() const { return true; }

  // Number of independent generalized eigenfunctions at lambda, when known.
  virtual std::optional<int> multiplicity(double) const { return std::nullopt; }

  // Warnings (truncation, domain size) for a prospective apply(z, f).
  virtual std::vector<std::string> diagnostics(cplx, const Vector&) const { return {}; }

 protected:
  virtual Vector solve(cplx z, const Vector& f) const = 0;
};

using LineOracle = ResolventOracle<GridFunction>;
using StripOracle = ResolventOracle<StripGridFunction>;

// Multiplication by a real symbol on a quadrature grid.
class MultiplicationResolvent : public LineOracle {
 public:
  MultiplicationResolvent(std::function<double(double)> symbol, RulePtr rule, SpectrumInfo spectrum,
                          std::function<std::optional<int>(double)> multiplicity = {});

  const SpectrumInfo& spectrum() const override { return spectrum_; }
  std::optional<int> multiplicity(double lambda) const override;
  const RulePtr& grid() const { return rule_; }
  const std::vector<double>& symbol_values() const { return p_; }

 protected:
  GridFunction solve(cplx z, const GridFunction& f) const override;

 private:
  RulePtr rule_;
  std::vector<double> p_;
  SpectrumInfo spectrum_;
  std::function<std::optional<int>(double)> multiplicity_;
};

// x^3 - x on (-1, 1) with an n-node Gauss-Legendre grid.
std::unique_ptr<MultiplicationResolvent> multiplication_resolvent(int n = 2000);
std::unique_ptr<MultiplicationResolvent> multiplication_resolvent(RulePtr rule);

// Composite Gauss-Legendre rule on (-1, 1) graded around the interior roots of
// x^3 - x = lambda down to a fraction of eps / |p'(root)|. Resolves the
// near-singular resolvent for small eps without a huge global grid.
RulePtr graded_rule_for_level(double lambda, double min_eps, int nodes_per_panel = 20);

// p(x) u + g <u, g>_w on (-1, 1), g(x) = exp(-x^2). Applied with the
// Sherman-Morrison formula u = (p - z)^{-1} [f - c g].
class RankOneResolvent : public LineOracle {
 public:
  explicit RankOneResolvent(RulePtr rule);

  const SpectrumInfo& spectrum() const override { return spectrum_; }
  std::optional<int> multiplicity(double lambda) const override;
  const RulePtr& grid() const { return rule_; }
  const std::vector<double>& symbol_values() const { return p_; }
  const std::vector<double>& perturbation() const { return g_; }

 protected:
  GridFunction solve(cplx z, const GridFunction& f) const override;

 private:
  RulePtr rule_;
  std::vector<double> p_, g_;
  SpectrumInfo spectrum_;
};

std::unique_ptr<RankOneResolvent> rank_one_perturbed_resolvent(int n = 2000);
std::unique_ptr<RankOneResolvent> rank_one_perturbed_resolvent(RulePtr rule);

// -d^2/dx^2 on L2(R) by Fourier division, evaluated on the grid of f. The
// output carries its transform f_hat(k) / (4 pi^2 k^2 - z).
class FreeLaplacianResolvent : public LineOracle {
 public:
  FreeLaplacianResolvent(double k_max = 8.0, int n_k = 4096, Execution exec = Execution::parallel);

  const SpectrumInfo& spectrum() const override { return spectrum_; }
  std::optional<int> multiplicity(double lambda) const override;
  std::vector<std::string> diagnostics(cplx z, const GridFunction& f) const override;

  double k_max() const { return k_max_; }
  int n_k() const { return n_k_; }

  // Shared by the strip operator: solve with an explicit spectral shift.
  GridFunction solve_shifted(cplx z, const GridFunction& f) const;

 protected:
  GridFunction solve(cplx z, const GridFunction& f) const override;

 private:
  double k_max_;
  int n_k_;
  Execution exec_;
  SpectrumInfo spectrum_;
};

std::unique_ptr<FreeLaplacianResolvent> free_laplacian_resolvent(
    double k_max = 8.0, int n_k = 4096, Execution exec = Execution::parallel);

// -d^2/dx^2 + v on [-L, L]: second-order differences on the cell-centred grid
// x_i = -L + (i + 1/2) h, zero ghost values, tridiagonal solve.
class SchrodingerResolvent : public LineOracle {
 public:
  SchrodingerResolvent(std::function<double(double)> v, double L, int n);

  const SpectrumInfo& spectrum() const override { return spectrum_; }
  std::optional<int> multiplicity(double lambda) const override;
  std::vector<std::string> diagnostics(cplx z, const GridFunction& f) const override;

  const RulePtr& grid() const { return rule_; }
  double half_width() const { return L_; }
  BandedComplexSystem system(cplx z) const;

 protected:
  GridFunction solve(cplx z, const GridFunction& f) const override;

 private:
  RulePtr rule_;
  double L_;
  double h_;
  std::vector<double> v_;
  SpectrumInfo spectrum_;
};

std::unique_ptr<SchrodingerResolvent> schrodinger_resolvent(std::function<double(double)> v,
                                                            double L, int n);

// -Laplacian on R x (-1, 1) with Dirichlet walls, one Fourier solve per
// transverse mode with shift (n pi / 2)^2.
class StripLaplacianResolvent : public StripOracle {
 public:
  StripLaplacianResolvent(double k_max = 8.0, int n_k = 4096, int n_modes = 20,
                          Execution exec = Execution::parallel);

  const SpectrumInfo& spectrum() const override { return spectrum_; }
  std::optional<int> multiplicity(double lambda) const override;
  std::vector<std::string> diagnostics(cplx z, const StripGridFunction& f) const override;

  int transverse_modes() const { return n_modes_; }

 protected:
  StripGridFunction solve(cplx z, const StripGridFunction& f) const override;

 private:
  FreeLaplacianResolvent line_;
  int n_modes_;
  Execution exec_;
  SpectrumInfo spectrum_;
};

std::unique_ptr<StripLaplacianResolvent> strip_laplacian_resolvent(
    double k_max = 8.0, int n_k = 4096, int n_modes = 20, Execution exec = Execution::parallel);

// Transverse threshold (n pi / 2)^2.
inline double strip_threshold(int n) { return (n * pi / 2.0) * (n * pi / 2.0); }

}  // namespace specwave
