#include "properties.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <random>

#include "specwave/catalog.hpp"
#include "specwave/operators.hpp"
#include "specwave/wavepacket.hpp"

namespace specwave::testkit {

namespace {

struct LineCase {
  const LineOracle* op;
  RulePtr grid;
  double re_lo, re_hi;
};

struct Gallery {
  std::unique_ptr<MultiplicationResolvent> mult = multiplication_resolvent(200);
  std::unique_ptr<RankOneResolvent> rank = rank_one_perturbed_resolvent(200);
  std::unique_ptr<FreeLaplacianResolvent> free = free_laplacian_resolvent(8.0, 1024);
  std::unique_ptr<SchrodingerResolvent> schr =
      schrodinger_resolvent(potential("short_range").v, 10.0, 400);
  std::unique_ptr<StripLaplacianResolvent> strip = strip_laplacian_resolvent(8.0, 1024, 6);
  RulePtr line_grid = share(uniform_grid(-10.0, 10.0, 200));

  std::vector<LineCase> lines() const {
    return {{mult.get(), mult->grid(), -0.6, 0.6},
            {rank.get(), rank->grid(), -0.6, 0.6},
            {free.get(), line_grid, -2.0, 30.0},
            {schr.get(), schr->grid(), -2.0, 20.0}};
  }
};

const Gallery& gallery() {
  static const Gallery g;
  return g;
}

struct Sampler {
  std::mt19937_64 rng;
  explicit Sampler(std::uint64_t seed) : rng(seed) {}

  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }
  cplx normal() {
    std::normal_distribution<double> n;
    return {n(rng), n(rng)};
  }
  cplx z(double re_lo, double re_hi) {
    const double im = uniform(0.05, 1.0);
    return {uniform(re_lo, re_hi), uniform(0.0, 1.0) < 0.5 ? im : -im};
  }
  GridFunction line(const RulePtr& grid, bool real = false) {
    std::vector<cplx> v(grid->size());
    for (auto& x : v) x = real ? cplx(normal().real(), 0.0) : normal();
    return {grid, std::move(v)};
  }
  StripGridFunction strip(const RulePtr& grid, int modes, bool real = false) {
    std::vector<GridFunction> m;
    for (int n = 0; n < modes; ++n) m.push_back(line(grid, real));
    return StripGridFunction(std::move(m));
  }
};

// Runs check(V-specific case) on instance i: four line operators and the strip
// in rotation.
template <class LineCheck, class StripCheck>
double rotate(int instances, std::uint64_t seed, LineCheck&& line_check, StripCheck&& strip_check) {
  Sampler s(seed);
  const auto cases = gallery().lines();
  double worst = 0.0;
  for (int i = 0; i < instances; ++i) {
    const std::size_t which = static_cast<std::size_t>(i) % (cases.size() + 1);
    const double v = which < cases.size() ? line_check(cases[which], s)
                                          : strip_check(*gallery().strip, s);
    worst = std::max(worst, v);
  }
  return worst;
}

double rel(double num, double den) { return den > 0.0 ? num / den : num; }

PropertyResult finish(std::string name, int instances, double worst, double tol) {
  return {std::move(name), instances, worst, tol, worst <= tol};
}

}  // namespace

PropertyResult resolvent_norm_bound(int instances, std::uint64_t seed) {
  const double worst = rotate(
      instances, seed,
      [](const LineCase& c, Sampler& s) {
        const cplx z = s.z(c.re_lo, c.re_hi);
        const GridFunction f = s.line(c.grid);
        return norm(c.op->apply(z, f)) - norm(f) / std::abs(z.imag());
      },
      [](const StripOracle& op, Sampler& s) {
        const cplx z = s.z(0.0, 40.0);
        const StripGridFunction f = s.strip(gallery().line_grid, 6);
        return norm(op.apply(z, f)) - norm(f) / std::abs(z.imag());
      });
  return finish("resolvent norm bound", instances, worst, 1e-8);
}

PropertyResult conjugate_symmetry(int instances, std::uint64_t seed) {
  const double worst = rotate(
      instances, seed,
      [](const LineCase& c, Sampler& s) {
        const cplx z = s.z(c.re_lo, c.re_hi);
        const GridFunction f = s.line(c.grid);
        const GridFunction u = c.op->apply(z, f);
        return rel(norm(c.op->apply(std::conj(z), conj(f)) - conj(u)), norm(u));
      },
      [](const StripOracle& op, Sampler& s) {
        const cplx z = s.z(0.0, 40.0);
        const StripGridFunction f = s.strip(gallery().line_grid, 6);
        const StripGridFunction u = op.apply(z, f);
        return rel(norm(op.apply(std::conj(z), conj(f)) - conj(u)), norm(u));
      });
  return finish("conjugate symmetry", instances, worst, 1e-10);
}

PropertyResult linearity(int instances, std::uint64_t seed) {
  const double worst = rotate(
      instances, seed,
      [](const LineCase& c, Sampler& s) {
        const cplx z = s.z(c.re_lo, c.re_hi), a = s.normal(), b = s.normal();
        const GridFunction f = s.line(c.grid), g = s.line(c.grid);
        const GridFunction lhs = c.op->apply(z, a * f + b * g);
        const GridFunction rhs = a * c.op->apply(z, f) + b * c.op->apply(z, g);
        return rel(norm(lhs - rhs), norm(rhs));
      },
      [](const StripOracle& op, Sampler& s) {
        const cplx z = s.z(0.0, 40.0), a = s.normal(), b = s.normal();
        const StripGridFunction f = s.strip(gallery().line_grid, 6), g = s.strip(gallery().line_grid, 6);
        const StripGridFunction lhs = op.apply(z, a * f + b * g);
        const StripGridFunction rhs = a * op.apply(z, f) + b * op.apply(z, g);
        return rel(norm(lhs - rhs), norm(rhs));
      });
  return finish("linearity", instances, worst, 1e-12);
}

PropertyResult first_resolvent_identity(int instances, std::uint64_t seed) {
  Sampler s(seed);
  const auto cases = gallery().lines();
  const LineCase picks[] = {cases[0], cases[3]};  // multiplication, Schrodinger
  double worst = 0.0;
  for (int i = 0; i < instances; ++i) {
    const LineCase& c = picks[i % 2];
    const cplx z1 = s.z(c.re_lo, c.re_hi), z2 = s.z(c.re_lo, c.re_hi);
    const GridFunction f = s.line(c.grid);
    const GridFunction lhs = c.op->apply(z1, f) - c.op->apply(z2, f);
    const GridFunction rhs = (z1 - z2) * c.op->apply(z1, c.op->apply(z2, f));
    worst = std::max(worst, rel(norm(lhs - rhs), norm(rhs)));
  }
  return finish("first resolvent identity", instances, worst, 1e-8);
}

PropertyResult kernel_symmetry(int instances, std::uint64_t seed) {
  Sampler s(seed);
  std::vector<RationalKernel> kernels;
  for (int m = 1; m <= 6; ++m) kernels.emplace_back(equispaced_poles(m));
  double worst = 0.0;
  for (int i = 0; i < instances; ++i) {
    const RationalKernel& K = kernels[i % 6];
    const double x = s.uniform(-100.0, 100.0);
    worst = std::max(worst, std::abs(eval_kernel(K, x) - eval_kernel(K, -x)));
  }
  return finish("kernel symmetry", instances, worst, 1e-13);
}

PropertyResult packet_reality(int instances, std::uint64_t seed) {
  AssembleOptions full;
  full.exploit_symmetry = false;
  full.exec = Execution::serial;
  std::vector<RationalKernel> kernels;
  for (int m = 1; m <= 5; ++m) kernels.emplace_back(equispaced_poles(m));
  int counter = 0;
  auto next_kernel = [&]() -> const RationalKernel& { return kernels[counter++ % 5]; };
  const double worst = rotate(
      instances, seed,
      [&](const LineCase& c, Sampler& s) {
        const double lambda = s.uniform(c.re_lo, c.re_hi), eps = s.uniform(0.01, 0.5);
        const auto u = assemble(*c.op, next_kernel(), eps, lambda, s.line(c.grid, true), full);
        return rel(norm(imag_part(u.values)), norm(u.values));
      },
      [&](const StripOracle& op, Sampler& s) {
        const double lambda = s.uniform(0.0, 40.0), eps = s.uniform(0.01, 0.5);
        const auto u = assemble(op, next_kernel(), eps, lambda, s.strip(gallery().line_grid, 6, true), full);
        return rel(norm(imag_part(u.values)), norm(u.values));
      });
  return finish("packet reality", instances, worst, 1e-10);
}

std::vector<PropertyResult> all_properties(int instances, std::uint64_t seed) {
  return {resolvent_norm_bound(instances, seed),      conjugate_symmetry(instances, seed + 1),
          linearity(instances, seed + 2),             first_resolvent_identity(instances, seed + 3),
          kernel_symmetry(instances, seed + 4),       packet_reality(instances, seed + 5)};
}

}  // namespace specwave::testkit
