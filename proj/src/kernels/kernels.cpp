#include "specwave/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "specwave/errors.hpp"
#include "specwave/linalg.hpp"
#include "specwave/quadrature.hpp"
#include "specwave/regression.hpp"

namespace specwave {

namespace {

constexpr int far_terms = 40;
constexpr double moment_cutoff = 1e6;

double near_field(const std::vector<cplx>& poles, const std::vector<cplx>& residues,
                  double x) {
  cplx s = 0.0, t = 0.0;
  double scale = 0.0;
  for (std::size_t j = 0; j < poles.size(); ++j) {
    const cplx term = residues[j] / (x - poles[j]);
    s += term;
    t += std::conj(residues[j]) / (x - std::conj(poles[j]));
    scale += std::abs(term);
  }
  const cplx v = (s - t) / (2.0 * pi * I);
  if (std::abs(v.imag()) > 1e-13 * (scale / pi) + 1e-300)
    throw std::logic_error("eval_kernel: imaginary residue " + std::to_string(v.imag()));
  return v.real();
}

}  // namespace

RationalKernel::RationalKernel(std::vector<cplx> poles) : poles_(std::move(poles)) {
  if (poles_.empty()) throw InvalidArgument("build_kernel: need at least one pole");
  for (const cplx& a : poles_)
    if (!(a.imag() > 0.0)) throw PoleInLowerHalfPlane("build_kernel: pole with Im a <= 0");
  residues_ = solve_vandermonde(poles_);

  const int m = order();
  double amax = 0.0;
  for (const cplx& a : poles_) amax = std::max(amax, std::abs(a));
  far_radius_ = 8.0 * amax;
  far_moments_.resize(far_terms);
  for (int q = 0; q < far_terms; ++q) {
    std::complex<long double> s = 0.0L;
    for (int j = 0; j < m; ++j) {
      const std::complex<long double> a(poles_[j].real(), poles_[j].imag());
      const std::complex<long double> al(residues_[j].real(), residues_[j].imag());
      s += al * std::pow(a, m + q);
    }
    far_moments_[q] = cplx(static_cast<double>(s.real()), static_cast<double>(s.imag()));
  }

  symmetric_ = true;
  for (const cplx& a : poles_) {
    const cplx mirror = -std::conj(a);
    const bool found = std::any_of(poles_.begin(), poles_.end(), [&](const cplx& b) {
      return std::abs(b - mirror) < 1e-14 * std::max(1.0, std::abs(a));
    });
    if (!found) symmetric_ = false;
  }

  // C_K = max |K(x)| (1 + |x|)^{m+1} on a log grid out to 1e6.
  decay_constant_ = std::abs((*this)(0.0));
  for (int i = 0; i <= 3000; ++i) {
    const double x = std::pow(10.0, -3.0 + 9.0 * i / 3000.0);
    for (double s : {x, -x}) {
      const double v = std::abs((*this)(s)) * std::pow(1.0 + x, m + 1);
      decay_constant_ = std::max(decay_constant_, v);
    }
  }
}

double RationalKernel::operator()(double x) const {
  if (std::abs(x) <= far_radius_) return near_field(poles_, residues_, x);
  const double inv = 1.0 / x;
  double pw = std::pow(inv, order() + 1);
  double s = 0.0;
  for (const cplx& M : far_moments_) {
    s += M.imag() * pw;
    pw *= inv;
  }
  return s / pi;
}

std::vector<cplx> equispaced_poles(int m) {
  if (m < 1) throw InvalidArgument("equispaced_poles: need m >= 1");
  if (m == 1) return {I};
  std::vector<cplx> poles(m);
  for (int j = 0; j < m; ++j) poles[j] = cplx(-1.0 + 2.0 * j / (m - 1), 1.0);
  return poles;
}

RationalKernel build_kernel(std::span<const cplx> poles) {
  return RationalKernel(std::vector<cplx>(poles.begin(), poles.end()));
}

double eval_kernel(const RationalKernel& K, double x) { return K(x); }

double eval_scaled(const RationalKernel& K, double eps, double x) {
  if (!(eps > 0.0)) throw NonpositiveEpsilon("eval_scaled: eps must be positive");
  return K(x / eps) / eps;
}

MomentReport verify_moments(const RationalKernel& K, double tol) {
  const int m = K.order();
  const double R = K.far_radius();
  const double X = moment_cutoff;

  // Near field split at 0 and the pole abscissae; far field in octaves.
  std::vector<double> near{-R, 0.0, R};
  for (const cplx& a : K.poles()) near.push_back(a.real());
  std::sort(near.begin(), near.end());
  near.erase(std::unique(near.begin(), near.end()), near.end());
  std::vector<double> far{R};
  while (far.back() < X) far.push_back(std::min(X, 2.0 * far.back()));

  MomentReport report;
  std::vector<double> moments(m);
  for (int p = 0; p < m; ++p) {
    auto g = [&](double x) { return K(x) * std::pow(x, p); };
    auto g_neg = [&](double x) { return g(-x); };
    double value = integrate_panels(g, near, 1e-15).value;
    value += integrate_panels(g, far, 1e-16).value;
    value += integrate_panels(g_neg, far, 1e-16).value;
    // Exact tail beyond |x| = X from the far-field series.
    for (int q = 0; q < static_cast<int>(K.far_moments().size()); ++q) {
      const int qq = m + q;
      const double sign = ((p - qq - 1) % 2 == 0) ? 1.0 : -1.0;
      value += K.far_moments()[q].imag() / pi * std::pow(X, p - qq) / (qq - p) * (1.0 + sign);
    }
    moments[p] = value;
  }
  report.normalization_error = std::abs(moments[0] - 1.0);
  for (int p = 1; p < m; ++p) report.moment_errors.push_back(std::abs(moments[p]));
  report.tail_bound = 2.0 * K.decay_constant_estimate() * std::pow(X, -1.0);

  std::vector<SweepPoint> pts;
  for (int i = 0; i <= 40; ++i) {
    const double x = std::pow(10.0, 2.0 + 4.0 * i / 40.0);
    const double v = std::abs(K(x));
    if (v > 0.0) pts.push_back({x, v});
  }
  report.decay_exponent_fit = pts.size() >= 3 ? fit_loglog_slope(pts) : 0.0;

  report.passed = report.normalization_error < tol;
  for (double e : report.moment_errors) report.passed = report.passed && e < tol;
  return report;
}

}  // namespace specwave
