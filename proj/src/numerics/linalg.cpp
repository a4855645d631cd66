#include "specwave/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "specwave/errors.hpp"

namespace specwave {

std::vector<cplx> solve_vandermonde(std::span<const cplx> poles) {
  const std::size_t m = poles.size();
  if (m == 0) throw InvalidArgument("solve_vandermonde: no poles");
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t k = j + 1; k < m; ++k)
      if (std::abs(poles[j] - poles[k]) < 1e-14)
        throw DuplicatePoles("solve_vandermonde: poles " + std::to_string(j) + " and " +
                             std::to_string(k) + " coincide");

  std::vector<cplx> alpha(m, 1.0);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t k = 0; k < m; ++k)
      if (k != j) alpha[j] *= poles[k] / (poles[k] - poles[j]);
  return alpha;
}

BandedComplexSystem::BandedComplexSystem(std::size_t n, std::size_t bandwidth)
    : n_(n), b_(bandwidth), diagonals_(2 * bandwidth + 1, std::vector<cplx>(n, 0.0)) {}

cplx BandedComplexSystem::get(std::size_t i, std::size_t j) const {
  const long o = static_cast<long>(j) - static_cast<long>(i);
  if (i >= n_ || j >= n_ || std::abs(o) > static_cast<long>(b_)) return 0.0;
  return diagonals_[o + b_][i];
}

void BandedComplexSystem::set(std::size_t i, std::size_t j, cplx v) {
  const long o = static_cast<long>(j) - static_cast<long>(i);
  if (i >= n_ || j >= n_ || std::abs(o) > static_cast<long>(b_))
    throw InvalidArgument("BandedComplexSystem::set: entry outside the band");
  diagonals_[o + b_][i] = v;
}

std::vector<cplx>& BandedComplexSystem::diagonal(long offset) {
  if (std::abs(offset) > static_cast<long>(b_))
    throw InvalidArgument("BandedComplexSystem::diagonal: offset outside the band");
  return diagonals_[offset + b_];
}

const std::vector<cplx>& BandedComplexSystem::diagonal(long offset) const {
  if (std::abs(offset) > static_cast<long>(b_))
    throw InvalidArgument("BandedComplexSystem::diagonal: offset outside the band");
  return diagonals_[offset + b_];
}

std::vector<cplx> BandedComplexSystem::multiply(std::span<const cplx> x) const {
  if (x.size() != n_) throw InvalidArgument("BandedComplexSystem::multiply: size mismatch");
  std::vector<cplx> y(n_, 0.0);
  const long b = static_cast<long>(b_), n = static_cast<long>(n_);
  for (long i = 0; i < n; ++i) {
    cplx s = 0.0;
    for (long o = -b; o <= b; ++o) {
      const long j = i + o;
      if (j >= 0 && j < n) s += diagonals_[o + b][i] * x[j];
    }
    y[i] = s;
  }
  return y;
}

std::vector<cplx> solve_banded(const BandedComplexSystem& system, std::span<const cplx> rhs) {
  const long n = static_cast<long>(system.size());
  const long b = static_cast<long>(system.bandwidth());
  if (static_cast<long>(rhs.size()) != n)
    throw InvalidArgument("solve_banded: rhs size mismatch");

  // Row-major band copy: a[i * w + (j - i + b)] = A(i, j).
  const long w = 2 * b + 1;
  std::vector<cplx> a(static_cast<std::size_t>(n * w), 0.0);
  for (long o = -b; o <= b; ++o) {
    const auto& d = system.diagonal(o);
    for (long i = 0; i < n; ++i) {
      const long j = i + o;
      if (j >= 0 && j < n) a[i * w + o + b] = d[i];
    }
  }
  auto at = [&](long i, long j) -> cplx& { return a[i * w + (j - i + b)]; };

  std::vector<cplx> x(rhs.begin(), rhs.end());
  for (long k = 0; k < n; ++k) {
    const cplx pivot = at(k, k);
    if (std::abs(pivot) < 1e-300)
      throw SingularSystem("solve_banded: pivot " + std::to_string(k) + " underflows");
    const long last = std::min(n - 1, k + b);
    for (long i = k + 1; i <= last; ++i) {
      const cplx l = at(i, k) / pivot;
      if (l == cplx(0.0)) continue;
      for (long j = k + 1; j <= last; ++j) at(i, j) -= l * at(k, j);
      x[i] -= l * x[k];
    }
  }
  for (long k = n - 1; k >= 0; --k) {
    cplx s = x[k];
    const long last = std::min(n - 1, k + b);
    for (long j = k + 1; j <= last; ++j) s -= at(k, j) * x[j];
    x[k] = s / at(k, k);
  }
  return x;
}

}  // namespace specwave
