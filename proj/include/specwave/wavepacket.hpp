#pragma once

#include <cmath>
#include <exception>
#include <functional>
#include <optional>
#include <string>
#include <type_traits>
#include <vector>

#include "specwave/errors.hpp"
#include "specwave/execution.hpp"
#include "specwave/kernels.hpp"
#include "specwave/measures.hpp"
#include "specwave/operators.hpp"
#include "specwave/regression.hpp"

namespace specwave {

template <class V>
struct WavePacket {
  double lambda;
  double eps;
  int kernel_order;
  V values;
};

struct AssembleOptions {
  // For real oracles and real f, R(conj z) f = conj(R(z) f): m solves instead of 2m.
  bool exploit_symmetry = true;
  Execution exec = Execution::parallel;
};

namespace detail {

// Runs body(i) for i < count, serially or with OpenMP, rethrowing the first failure.
template <class Body>
void for_each_index(int count, Execution exec, Body&& body) {
  if (exec == Execution::serial) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < count; ++i) {
    try {
      body(i);
    } catch (...) {
#pragma omp critical(specwave_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

template <class V>
V linear_combination(const std::vector<cplx>& coeffs, const std::vector<std::optional<V>>& vs) {
  V acc = coeffs[0] * *vs[0];
  for (std::size_t i = 1; i < vs.size(); ++i) acc = acc + coeffs[i] * *vs[i];
  return acc;
}

}  // namespace detail

// u = K_eps(lambda - A) f
//   = (1/2 pi i) sum_k [conj(alpha_k) R(lambda - eps conj(a_k)) - alpha_k R(lambda - eps a_k)] f.
template <class V>
WavePacket<V> assemble(const ResolventOracle<V>& oracle, const RationalKernel& K, double eps,
                       double lambda, const V& f, const AssembleOptions& opt = {}) {
  if (!(eps > 0.0)) throw NonpositiveEpsilon("assemble: eps must be positive");
  const int m = K.order();
  const auto& a = K.poles();
  const auto& alpha = K.residues();

  if (opt.exploit_symmetry && oracle.is_real() && f.is_real()) {
    std::vector<std::optional<V>> w(m);
    detail::for_each_index(m, opt.exec, [&](int k) { w[k] = oracle.apply(lambda - eps * a[k], f); });
    // The conjugate terms mirror these, leaving -Im(sum alpha_k w_k) / pi.
    V s = detail::linear_combination(alpha, w);
    return {lambda, eps, m, cplx(-1.0 / pi) * imag_part(s)};
  }

  std::vector<std::optional<V>> w(2 * m);
  std::vector<cplx> coeffs(2 * m);
  detail::for_each_index(2 * m, opt.exec, [&](int i) {
    const int k = i / 2;
    if (i % 2 == 0) {
      w[i] = oracle.apply(lambda - eps * a[k], f);
    } else {
      w[i] = oracle.apply(lambda - eps * std::conj(a[k]), f);
    }
  });
  for (int k = 0; k < m; ++k) {
    coeffs[2 * k] = -alpha[k] / (2.0 * pi * I);
    coeffs[2 * k + 1] = std::conj(alpha[k]) / (2.0 * pi * I);
  }
  return {lambda, eps, m, detail::linear_combination(coeffs, w)};
}

// <u, phi>: linear in u, conjugate linear in phi.
template <class V>
cplx weak_pairing(const WavePacket<V>& u, const V& phi) {
  return inner_product(u.values, phi);
}

// <K_eps(lambda - A) f, f> = [K_eps * rho_f](lambda).
template <class V>
double smoothed_density(const ResolventOracle<V>& oracle, const RationalKernel& K, double eps,
                        double lambda, const V& f, const AssembleOptions& opt = {}) {
  return weak_pairing(assemble(oracle, K, eps, lambda, f, opt), f).real();
}

// rho_f-weighted generalized eigenfunction (the limit of the packet).
struct ReferenceEigenfunction {
  std::function<cplx(double)> evaluate;
  std::string normalization = "rho_f-weighted: limit of K_eps(lambda - A) f as eps -> 0";
};

// (1 / (4 pi sqrt(lambda))) [f_hat(k0) e^{i sqrt(lambda) x} + f_hat(-k0) e^{-i sqrt(lambda) x}].
ReferenceEigenfunction free_laplacian_reference(const TransformFunction& f_hat, double lambda);

// max over nodes in window of |u - ref|, divided by max |ref| there when relative.
double sup_error(const WavePacket<GridFunction>& u, const ReferenceEigenfunction& ref,
                 Interval window, bool relative = true);

struct ErrorSweep {
  int order;
  std::vector<SweepPoint> points;
  double slope;
};

// 10^{hi}, 10^{hi - step}, ..., down to 10^{lo}.
std::vector<double> log_spaced(double hi_exponent, double lo_exponent, double step = 0.25);

// Sweeps need >= 4 eps values spanning >= 1.5 decades.
void validate_sweep_eps(const std::vector<double>& eps);

enum class SweepMode { weak, sup };

template <class V>
struct SweepConfig {
  const ResolventOracle<V>* oracle = nullptr;
  std::optional<V> f;
  std::optional<V> phi;                          // weak mode
  std::optional<double> weak_reference;          // rho_{f,phi}(lambda), weak mode
  std::optional<ReferenceEigenfunction> reference;  // sup mode
  std::optional<Interval> window;                // sup mode
  double lambda = 0.0;
  std::vector<int> orders;
  std::vector<double> eps;
  SweepMode mode = SweepMode::weak;
  AssembleOptions assemble;
  Execution exec = Execution::parallel;  // over (eps, m) points
};

// Relative errors per (eps, m) plus the fitted log-log slope per order.
template <class V>
std::vector<ErrorSweep> error_sweep(const SweepConfig<V>& cfg) {
  if (!cfg.oracle || !cfg.f) throw InvalidArgument("error_sweep: oracle and f are required");
  validate_sweep_eps(cfg.eps);
  if (cfg.orders.empty()) throw InvalidArgument("error_sweep: no kernel orders");
  if (cfg.mode == SweepMode::weak && (!cfg.phi || !cfg.weak_reference))
    throw InvalidArgument("error_sweep: weak mode needs phi and a reference value");
  if (cfg.mode == SweepMode::sup) {
    if constexpr (!std::is_same_v<V, GridFunction>) {
      throw NoReferenceAvailable("error_sweep: sup mode is defined for line operators only");
    } else if (!cfg.reference || !cfg.window) {
      throw NoReferenceAvailable("error_sweep: sup mode needs a reference eigenfunction");
    }
  }

  std::vector<RationalKernel> kernels;
  for (int m : cfg.orders) kernels.emplace_back(equispaced_poles(m));

  const int ne = static_cast<int>(cfg.eps.size());
  const int total = static_cast<int>(kernels.size()) * ne;
  std::vector<double> err(total);
  AssembleOptions inner = cfg.assemble;
  if (cfg.exec == Execution::parallel) inner.exec = Execution::serial;

  detail::for_each_index(total, cfg.exec, [&](int idx) {
    const RationalKernel& K = kernels[idx / ne];
    const double eps = cfg.eps[idx % ne];
    auto u = assemble(*cfg.oracle, K, eps, cfg.lambda, *cfg.f, inner);
    if (cfg.mode == SweepMode::weak) {
      const double ref = *cfg.weak_reference;
      err[idx] = std::abs(weak_pairing(u, *cfg.phi) - ref) / std::abs(ref);
    } else {
      if constexpr (std::is_same_v<V, GridFunction>) err[idx] = sup_error(u, *cfg.reference, *cfg.window);
    }
  });

  std::vector<ErrorSweep> out;
  for (std::size_t o = 0; o < kernels.size(); ++o) {
    ErrorSweep s{cfg.orders[o], {}, 0.0};
    for (int e = 0; e < ne; ++e) s.points.push_back({cfg.eps[e], err[o * ne + e]});
    s.slope = fit_loglog_slope(s.points);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace specwave
