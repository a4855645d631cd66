#include <cmath>
#include <sstream>

#include "specwave/operators.hpp"

namespace specwave {

SchrodingerResolvent::SchrodingerResolvent(std::function<double(double)> v, double L, int n)
    : L_(L), spectrum_{{{0.0, infinity}}, {0.0}} {
  if (!(L > 0.0)) throw InvalidArgument("schrodinger_resolvent: need L > 0");
  if (n < 100) throw InvalidArgument("schrodinger_resolvent: need n >= 100");
  rule_ = share(uniform_grid(-L, L, n));
  h_ = 2.0 * L / n;
  v_.resize(n);
  for (int i = 0; i < n; ++i) v_[i] = v(rule_->nodes[i]);
}

std::optional<int> SchrodingerResolvent::multiplicity(double lambda) const {
  if (lambda > 0.0) return 2;
  return std::nullopt;
}

std::vector<std::string> SchrodingerResolvent::diagnostics(cplx z, const GridFunction&) const {
  std::vector<std::string> out;
  const double lambda = z.real(), eps = std::abs(z.imag());
  if (lambda > 0.0 && eps > 0.0) {
    const double damping = 2.0 * std::sqrt(lambda) / eps;
    if (damping > L_ / 5.0) {
      std::ostringstream os;
      os << "DomainTooSmall: damping length " << damping << " exceeds L/5 = " << L_ / 5.0;
      out.push_back(os.str());
    }
  }
  return out;
}

BandedComplexSystem SchrodingerResolvent::system(cplx z) const {
  const std::size_t n = v_.size();
  BandedComplexSystem A(n, 1);
  const double c = 1.0 / (h_ * h_);
  auto& d = A.diagonal(0);
  auto& lo = A.diagonal(-1);
  auto& up = A.diagonal(1);
  for (std::size_t i = 0; i < n; ++i) {
    d[i] = 2.0 * c + v_[i] - z;
    lo[i] = -c;
    up[i] = -c;
  }
  return A;
}

GridFunction SchrodingerResolvent::solve(cplx z, const GridFunction& f) const {
  require_same_grid(f.rule(), *rule_, "schrodinger resolvent");
  return GridFunction(rule_, solve_banded(system(z), f.values()));
}

std::unique_ptr<SchrodingerResolvent> schrodinger_resolvent(std::function<double(double)> v,
                                                            double L, int n) {
  return std::make_unique<SchrodingerResolvent>(std::move(v), L, n);
}

}  // namespace specwave
