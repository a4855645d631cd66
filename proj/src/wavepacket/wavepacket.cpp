#include "specwave/wavepacket.hpp"

#include <algorithm>
#include <cmath>

namespace specwave {

ReferenceEigenfunction free_laplacian_reference(const TransformFunction& f_hat, double lambda) {
  if (!(lambda > 0.0)) throw InvalidArgument("free_laplacian_reference: need lambda > 0");
  const double s = std::sqrt(lambda);
  const double k0 = s / (2.0 * pi);
  const cplx plus = f_hat(k0), minus = f_hat(-k0);
  return {[=](double x) {
    return (plus * std::exp(I * s * x) + minus * std::exp(-I * s * x)) / (4.0 * pi * s);
  }};
}

double sup_error(const WavePacket<GridFunction>& u, const ReferenceEigenfunction& ref,
                 Interval window, bool relative) {
  const auto& x = u.values.rule().nodes;
  double err = 0.0, scale = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!window.contains(x[i])) continue;
    const cplx r = ref.evaluate(x[i]);
    err = std::max(err, std::abs(u.values[i] - r));
    scale = std::max(scale, std::abs(r));
    ++count;
  }
  if (count == 0) throw EmptyWindow("sup_error: no grid nodes inside the window");
  if (!relative) return err;
  if (scale == 0.0) throw NumericalFailure("sup_error: reference vanishes on the window");
  return err / scale;
}

std::vector<double> log_spaced(double hi_exponent, double lo_exponent, double step) {
  std::vector<double> out;
  const int n = static_cast<int>(std::floor((hi_exponent - lo_exponent) / step + 1e-9));
  for (int j = 0; j <= n; ++j) out.push_back(std::pow(10.0, hi_exponent - j * step));
  return out;
}

void validate_sweep_eps(const std::vector<double>& eps) {
  if (eps.size() < 4)
    throw InsufficientData("error sweep needs at least 4 eps values, got " +
                           std::to_string(eps.size()));
  for (double e : eps)
    if (!(e > 0.0)) throw NonpositiveEpsilon("error sweep: eps values must be positive");
  const auto [lo, hi] = std::minmax_element(eps.begin(), eps.end());
  if (std::log10(*hi / *lo) < 1.5 - 1e-9)
    throw InsufficientData("error sweep: eps values must span at least 1.5 decades");
}

}  // namespace specwave
