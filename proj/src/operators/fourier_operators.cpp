#include <algorithm>
#include <cmath>
#include <exception>
#include <sstream>

#include "specwave/fourier.hpp"
#include "specwave/operators.hpp"

namespace specwave {

namespace {

std::string truncation_warning(const GridFunction& f, double k_max, Execution exec) {
  std::vector<double> k;
  for (int i = 0; i <= 400; ++i) k.push_back(-k_max + 2.0 * k_max * i / 400.0);
  const auto F = transform_values(f, k, exec);
  double peak = 0.0;
  for (cplx v : F) peak = std::max(peak, std::abs(v));
  const double edge = std::max(std::abs(F.front()), std::abs(F.back()));
  if (peak > 0.0 && edge / peak > 1e-12) {
    std::ostringstream os;
    os << "TruncationWarning: |f_hat(k_max)| / max|f_hat| = " << edge / peak << " at k_max = " << k_max;
    return os.str();
  }
  return {};
}

}  // namespace

FreeLaplacianResolvent::FreeLaplacianResolvent(double k_max, int n_k, Execution exec)
    : k_max_(k_max), n_k_(n_k), exec_(exec), spectrum_{{{0.0, infinity}}, {0.0}} {
  if (!(k_max > 0.0) || n_k < 16)
    throw InvalidArgument("free_laplacian_resolvent: need k_max > 0 and n_k >= 16");
}

std::optional<int> FreeLaplacianResolvent::multiplicity(double lambda) const {
  if (lambda > 0.0) return 2;
  return lambda == 0.0 ? 1 : 0;
}

std::vector<std::string> FreeLaplacianResolvent::diagnostics(cplx, const GridFunction& f) const {
  std::vector<std::string> out;
  if (auto w = truncation_warning(f, k_max_, exec_); !w.empty()) out.push_back(w);
  return out;
}

GridFunction FreeLaplacianResolvent::solve(cplx z, const GridFunction& f) const {
  return solve_shifted(z, f);
}

GridFunction FreeLaplacianResolvent::solve_shifted(cplx z, const GridFunction& f) const {
  const cplx root = std::sqrt(z) / (2.0 * pi);
  std::vector<cplx> poles{root, -root};
  if (f.transform())
    for (const cplx& p : f.transform()->poles) poles.push_back(p);

  const auto& x = f.rule().nodes;
  double extent = 0.0;
  for (double xi : x) extent = std::max(extent, std::abs(xi));

  const KRule kr = build_k_rule(k_max_, n_k_, extent, poles);
  const auto F = transform_values(f, kr.k, exec_);
  std::vector<cplx> c(kr.k.size());
  for (std::size_t j = 0; j < c.size(); ++j)
    c[j] = kr.w[j] * F[j] / (4.0 * pi * pi * kr.k[j] * kr.k[j] - z);
  auto u = synthesize(kr.k, c, x, exec_);

  std::function<cplx(double)> fhat;
  if (f.transform()) {
    fhat = f.transform()->eval;
  } else {
    auto rule = f.rule_ptr();
    auto values = std::make_shared<const std::vector<cplx>>(f.values());
    fhat = [rule, values](double k) {
      const double kk[1] = {k};
      return forward_transform(*rule, *values, kk, Execution::serial)[0];
    };
  }
  FourierTransform t{[fhat, z](double k) { return fhat(k) / (4.0 * pi * pi * k * k - z); },
                     poles};
  return GridFunction(f.rule_ptr(), std::move(u), std::move(t));
}

std::unique_ptr<FreeLaplacianResolvent> free_laplacian_resolvent(double k_max, int n_k,
                                                                 Execution exec) {
  return std::make_unique<FreeLaplacianResolvent>(k_max, n_k, exec);
}

StripLaplacianResolvent::StripLaplacianResolvent(double k_max, int n_k, int n_modes, Execution exec)
    : line_(k_max, n_k, exec), n_modes_(n_modes), exec_(exec) {
  if (n_modes < 1) throw InvalidArgument("strip_laplacian_resolvent: need N_y >= 1");
  spectrum_.intervals = {{strip_threshold(1), infinity}};
  for (int n = 1; n <= n_modes; ++n) spectrum_.multiplicity_breakpoints.push_back(strip_threshold(n));
}

std::optional<int> StripLaplacianResolvent::multiplicity(double lambda) const {
  int count = 0;
  for (int n = 1; n <= n_modes_; ++n)
    if (lambda > strip_threshold(n)) count += 2;
  return count;
}

std::vector<std::string> StripLaplacianResolvent::diagnostics(cplx z,
                                                              const StripGridFunction& f) const {
  std::vector<std::string> out;
  if (f.transverse_tail() > 1e-12) {
    std::ostringstream os;
    os << "TruncationWarning: transverse energy beyond N_y = " << f.transverse_modes()
       << " is " << f.transverse_tail() << " of the total";
    out.push_back(os.str());
  }
  for (const auto& w : line_.diagnostics(z, f.mode(1))) out.push_back(w);
  return out;
}

StripGridFunction StripLaplacianResolvent::solve(cplx z, const StripGridFunction& f) const {
  if (f.transverse_modes() != n_modes_)
    throw GridMismatch("strip resolvent: input has " + std::to_string(f.transverse_modes()) +
                       " transverse modes, operator has " + std::to_string(n_modes_));
  std::vector<std::optional<GridFunction>> out(n_modes_);
  std::exception_ptr failure;
  if (exec_ == Execution::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int n = 1; n <= n_modes_; ++n) {
      try {
        out[n - 1] = line_.solve_shifted(z - strip_threshold(n), f.mode(n));
      } catch (...) {
#pragma omp critical
        failure = std::current_exception();
      }
    }
  } else {
    for (int n = 1; n <= n_modes_; ++n)
      out[n - 1] = line_.solve_shifted(z - strip_threshold(n), f.mode(n));
  }
  if (failure) std::rethrow_exception(failure);
  std::vector<GridFunction> modes;
  for (auto& m : out) modes.push_back(std::move(*m));
  return StripGridFunction(std::move(modes), f.transverse_tail());
}

std::unique_ptr<StripLaplacianResolvent> strip_laplacian_resolvent(double k_max, int n_k,
                                                                   int n_modes, Execution exec) {
  return std::make_unique<StripLaplacianResolvent>(k_max, n_k, n_modes, exec);
}

}  // namespace specwave
