// Serial reference path vs OpenMP path for the data-parallel kernels.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "specwave/catalog.hpp"
#include "specwave/fourier.hpp"
#include "specwave/wavepacket.hpp"

using namespace specwave;

namespace {

// Best of `repeat` wall-clock runs, in milliseconds.
double time_ms(int repeat, const std::function<void()>& body) {
  double best = INFINITY;
  for (int r = 0; r < repeat; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    body();
    best = std::min(best, std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

void report(const std::string& name, int repeat, const std::function<void(Execution)>& body) {
  const double s = time_ms(repeat, [&] { body(Execution::serial); });
  const double p = time_ms(repeat, [&] { body(Execution::parallel); });
  std::printf("%-34s %10.2f %10.2f %8.2fx\n", name.c_str(), s, p, s / p);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"serial vs parallel timings"};
  int repeat = 3;
  int n_gl = 20000;
  app.add_option("--repeat", repeat, "runs per kernel; the best is reported")->check(CLI::PositiveNumber);
  app.add_option("--gl-nodes", n_gl, "Gauss-Legendre size")->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);

  std::printf("threads: %d\n", max_threads());
  std::printf("%-34s %10s %10s %9s\n", "kernel", "serial ms", "omp ms", "speedup");

  report("gauss_legendre n=" + std::to_string(n_gl), repeat,
         [&](Execution e) { (void)gauss_legendre(n_gl, -1.0, 1.0, e); });

  const auto grid = uniform_grid(-10.0, 10.0, 800);
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n01;
  std::vector<cplx> values(grid.size());
  for (auto& v : values) v = cplx(n01(rng), n01(rng));
  const auto k = build_k_rule(8.0, 4096, 20.0, std::vector<cplx>{cplx(1.0, 1e-3)});
  const std::string size = " (" + std::to_string(k.k.size()) + " k x " + std::to_string(grid.size()) + " x)";
  report("forward_transform" + size, repeat, [&](Execution e) { (void)forward_transform(grid, values, k.k, e); });
  std::vector<cplx> coeffs(k.k.size());
  for (auto& c : coeffs) c = cplx(n01(rng), n01(rng));
  report("synthesize" + size, repeat, [&](Execution e) { (void)synthesize(k.k, coeffs, grid.nodes, e); });

  const auto g = sample(line_function("gaussian"), share(uniform_grid(-10.0, 10.0, 400)));
  report("free Laplacian packet m=4", repeat, [&](Execution e) {
    const auto op = free_laplacian_resolvent(8.0, 4096, e);
    (void)assemble(*op, RationalKernel(equispaced_poles(4)), 0.01, 1.0, g, {true, e});
  });

  const auto fs = sample(strip_profile("gaussian_strip"), share(uniform_grid(-10.0, 10.0, 400)), 20);
  report("strip resolvent, 20 modes", repeat, [&](Execution e) {
    const auto op = strip_laplacian_resolvent(8.0, 4096, 20, e);
    (void)op->apply(cplx(12.0, 0.05), fs);
  });

  const auto op = multiplication_resolvent(graded_rule_for_level(0.01, 1e-3));
  const auto& c2 = line_function("cos2pi");
  const auto& c1 = line_function("cospi");
  SweepConfig<GridFunction> cfg;
  cfg.oracle = op.get();
  cfg.f = sample(c2, op->grid());
  cfg.phi = sample(c1, op->grid());
  cfg.weak_reference = rho_multiplication(c2.f, c1.f, 0.01);
  cfg.lambda = 0.01;
  cfg.orders = {1, 3, 5};
  cfg.eps = log_spaced(0.0, -3.0);
  report("error_sweep 3 orders x 13 eps", repeat, [&](Execution e) {
    auto c = cfg;
    c.exec = e;
    c.assemble.exec = e;
    (void)error_sweep(c);
  });
  return 0;
}
