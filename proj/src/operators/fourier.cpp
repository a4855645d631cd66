#include "specwave/fourier.hpp"

#include <algorithm>
#include <cmath>

#include "specwave/errors.hpp"

namespace specwave {

namespace {

constexpr int panel_nodes = 16;
constexpr std::size_t block = 32;

// Spacing when x is uniform to rounding, 0 otherwise.
double uniform_spacing(std::span<const double> x) {
  if (x.size() < 2) return 0.0;
  const double h = (x.back() - x.front()) / static_cast<double>(x.size() - 1);
  for (std::size_t i = 1; i < x.size(); ++i)
    if (std::abs((x[i] - x[i - 1]) - h) > 1e-9 * std::abs(h)) return 0.0;
  return h;
}

cplx phase(double theta) { return {std::cos(theta), std::sin(theta)}; }

}  // namespace

KRule build_k_rule(double k_max, int n_k, double x_extent, std::span<const cplx> poles) {
  if (!(k_max > 0.0) || n_k < panel_nodes)
    throw InvalidArgument("build_k_rule: need k_max > 0 and n_k >= 16");
  double width = 2.0 * k_max / (n_k / panel_nodes);
  if (x_extent > 0.0) width = std::min(width, 1.0 / x_extent);
  const int panels = static_cast<int>(std::ceil(2.0 * k_max / width - 1e-9));
  width = 2.0 * k_max / panels;

  std::vector<double> breaks;
  for (int i = 0; i <= panels; ++i) breaks.push_back(-k_max + i * width);
  for (const cplx& p : poles) {
    const double c = p.real(), d = std::abs(p.imag());
    if (std::abs(c) > k_max + width || !(d < width)) continue;
    breaks.push_back(c);
    for (double s = 0.5 * std::max(d, 1e-14); s < width; s *= 2.0) {
      breaks.push_back(c - s);
      breaks.push_back(c + s);
    }
  }
  std::sort(breaks.begin(), breaks.end());
  std::vector<double> clean;
  for (double b : breaks) {
    b = std::clamp(b, -k_max, k_max);
    if (clean.empty() || b - clean.back() > 1e-15 * k_max) clean.push_back(b);
  }
  clean.back() = k_max;

  const QuadratureRule rule = composite_gauss_legendre(clean, panel_nodes);
  return {rule.nodes, rule.weights};
}

std::vector<cplx> forward_transform(const QuadratureRule& x, std::span<const cplx> values,
                                    std::span<const double> k, Execution exec) {
  const std::size_t nx = x.size(), nk = k.size();
  std::vector<cplx> F(nk, 0.0);
  std::vector<cplx> wf(nx);
  for (std::size_t i = 0; i < nx; ++i) wf[i] = x.weights[i] * values[i];

  if (exec == Execution::serial) {
    for (std::size_t j = 0; j < nk; ++j) {
      cplx s = 0.0;
      for (std::size_t i = 0; i < nx; ++i) s += wf[i] * phase(-2.0 * pi * k[j] * x.nodes[i]);
      F[j] = s;
    }
    return F;
  }

  const double h = uniform_spacing(x.nodes);
  const long nkl = static_cast<long>(nk);
#pragma omp parallel for schedule(static)
  for (long j = 0; j < nkl; ++j) {
    cplx s = 0.0;
    if (h != 0.0) {
      const cplx step = phase(-2.0 * pi * k[j] * h);
      for (std::size_t b0 = 0; b0 < nx; b0 += block) {
        cplx e = phase(-2.0 * pi * k[j] * x.nodes[b0]);
        const std::size_t end = std::min(nx, b0 + block);
        for (std::size_t i = b0; i < end; ++i) {
          s += wf[i] * e;
          e *= step;
        }
      }
    } else {
      for (std::size_t i = 0; i < nx; ++i) s += wf[i] * phase(-2.0 * pi * k[j] * x.nodes[i]);
    }
    F[j] = s;
  }
  return F;
}

std::vector<cplx> synthesize(std::span<const double> k, std::span<const cplx> c,
                             std::span<const double> x, Execution exec) {
  const std::size_t nx = x.size(), nk = k.size();
  std::vector<cplx> u(nx, 0.0);

  if (exec == Execution::serial) {
    for (std::size_t i = 0; i < nx; ++i) {
      cplx s = 0.0;
      for (std::size_t j = 0; j < nk; ++j) s += c[j] * phase(2.0 * pi * k[j] * x[i]);
      u[i] = s;
    }
    return u;
  }

  const double h = uniform_spacing(x);
  if (h == 0.0) {
    const long nxl = static_cast<long>(nx);
#pragma omp parallel for schedule(static)
    for (long i = 0; i < nxl; ++i) {
      cplx s = 0.0;
      for (std::size_t j = 0; j < nk; ++j) s += c[j] * phase(2.0 * pi * k[j] * x[i]);
      u[i] = s;
    }
    return u;
  }

  // Uniform grid: within a block of x nodes advance the phase by e^{2 pi i k h}.
  std::vector<cplx> step(nk);
  for (std::size_t j = 0; j < nk; ++j) step[j] = phase(2.0 * pi * k[j] * h);
  const long blocks = static_cast<long>((nx + block - 1) / block);
#pragma omp parallel for schedule(static)
  for (long b = 0; b < blocks; ++b) {
    const std::size_t b0 = static_cast<std::size_t>(b) * block;
    const std::size_t len = std::min(block, nx - b0);
    cplx acc[block] = {};
    for (std::size_t j = 0; j < nk; ++j) {
      cplx e = c[j] * phase(2.0 * pi * k[j] * x[b0]);
      for (std::size_t i = 0; i < len; ++i) {
        acc[i] += e;
        e *= step[j];
      }
    }
    for (std::size_t i = 0; i < len; ++i) u[b0 + i] = acc[i];
  }
  return u;
}

std::vector<cplx> transform_values(const GridFunction& f, std::span<const double> k,
                                   Execution exec) {
  if (f.transform()) {
    std::vector<cplx> F(k.size());
    for (std::size_t j = 0; j < k.size(); ++j) F[j] = f.transform()->eval(k[j]);
    return F;
  }
  return forward_transform(f.rule(), f.values(), k, exec);
}

}  // namespace specwave
