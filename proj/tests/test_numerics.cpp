#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "specwave/errors.hpp"
#include "specwave/linalg.hpp"
#include "specwave/quadrature.hpp"
#include "specwave/regression.hpp"
#include "specwave/roots.hpp"

using namespace specwave;

namespace {

// Plain bisection on a sign-change bracket, independent of the library.
double bisect(double lambda, double a, double b) {
  auto h = [&](double x) { return x * x * x - x - lambda; };
  for (int i = 0; i < 200 && b - a > 1e-15; ++i) {
    const double c = 0.5 * (a + b);
    (h(a) < 0) == (h(c) < 0) ? a = c : b = c;
  }
  return 0.5 * (a + b);
}

double quad(const QuadratureRule& r, double (*f)(double)) {
  double s = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) s += r.weights[i] * f(r.nodes[i]);
  return s;
}

}  // namespace

TEST_CASE("gauss_legendre small rules") {
  const auto r1 = gauss_legendre(1, -1.0, 1.0);
  REQUIRE(r1.size() == 1);
  CHECK(r1.nodes[0] == doctest::Approx(0.0));
  CHECK(r1.weights[0] == doctest::Approx(2.0).epsilon(1e-15));

  const auto r2 = gauss_legendre(2, -1.0, 1.0);
  CHECK(std::abs(r2.nodes[0] + 1.0 / std::sqrt(3.0)) < 1e-15);
  CHECK(std::abs(r2.nodes[1] - 1.0 / std::sqrt(3.0)) < 1e-15);
  CHECK(std::abs(r2.weights[0] - 1.0) < 1e-15);
  CHECK(std::abs(r2.weights[1] - 1.0) < 1e-15);
}

TEST_CASE("gauss_legendre integrates x^4 and e^x") {
  CHECK(std::abs(quad(gauss_legendre(50, -1.0, 1.0), [](double x) { return x * x * x * x; }) - 0.4) < 1e-14);
  const double exact = std::exp(1.0) - std::exp(-1.0);
  for (int n : {20, 21, 50, 200, 2000, 20000}) {
    const double v = quad(gauss_legendre(n, -1.0, 1.0), [](double x) { return std::exp(x); });
    INFO("n = " << n);
    CHECK(std::abs(v - exact) / exact < 1e-13);
  }
}

TEST_CASE("gauss_legendre maps to (a, b) and rejects empty intervals") {
  const auto r = gauss_legendre(30, 2.0, 5.0);
  double w = 0.0;
  for (double x : r.weights) w += x;
  CHECK(std::abs(w - 3.0) < 1e-14);
  CHECK(r.nodes.front() > 2.0);
  CHECK(r.nodes.back() < 5.0);
  CHECK_THROWS_AS(gauss_legendre(10, 1.0, 1.0), InvalidInterval);
}

TEST_CASE("composite and midpoint rules") {
  const double breaks[] = {-1.0, -0.2, 0.5, 1.0};
  const auto c = composite_gauss_legendre(breaks, 4);
  CHECK(c.size() == 12);
  // Degree 7 is exact per panel.
  CHECK(std::abs(quad(c, [](double x) { return std::pow(x, 7) + x * x; }) - 2.0 / 3.0) < 1e-15);

  const auto u = uniform_grid(-1.0, 1.0, 4);
  CHECK(u.nodes == std::vector<double>{-0.75, -0.25, 0.25, 0.75});
  CHECK(u.weights == std::vector<double>{0.5, 0.5, 0.5, 0.5});
}

TEST_CASE("integrate_adaptive on smooth, peaked and endpoint-singular integrands") {
  auto r = integrate_adaptive([](double x) { return std::sin(x); }, 0.0, pi, 1e-14);
  CHECK(std::abs(r.value - 2.0) < 1e-13);
  r = integrate_adaptive([](double x) { return 1.0 / (1.0 + 25.0 * x * x); }, -1.0, 1.0, 1e-14);
  CHECK(std::abs(r.value - 0.4 * std::atan(5.0)) < 1e-13);
  r = integrate_adaptive([](double x) { return std::sqrt(x); }, 0.0, 1.0, 1e-13);
  CHECK(std::abs(r.value - 2.0 / 3.0) < 1e-11);
  r = integrate_adaptive([](double x) { return 1e-4 / (x * x + 1e-8); }, -1.0, 1.0, 1e-12);
  CHECK(std::abs(r.value - 2.0 * std::atan(1e4)) < 1e-10);
}

TEST_CASE("integrate_panels splits at kinks") {
  const double breaks[] = {-1.0, 0.0, 1.0};
  const auto r = integrate_panels([](double x) { return std::abs(x); }, breaks, 1e-15);
  CHECK(std::abs(r.value - 1.0) < 1e-15);
}

TEST_CASE("solve_vandermonde: worked examples") {
  const std::vector<cplx> p1{I};
  CHECK(std::abs(solve_vandermonde(p1)[0] - 1.0) < 1e-15);

  const std::vector<cplx> p2{-1.0 + I, 1.0 + I};
  const auto a2 = solve_vandermonde(p2);
  CHECK(std::abs(a2[0] - cplx(0.5, 0.5)) < 1e-15);
  CHECK(std::abs(a2[1] - cplx(0.5, -0.5)) < 1e-15);

  const std::vector<cplx> p3{-1.0 + I, I, 1.0 + I};
  const auto a3 = solve_vandermonde(p3);
  CHECK(std::abs(a3[0] - cplx(-0.5, 0.5)) < 1e-14);
  CHECK(std::abs(a3[1] - 2.0) < 1e-14);
  CHECK(std::abs(a3[2] - cplx(-0.5, -0.5)) < 1e-14);
}

TEST_CASE("solve_vandermonde: moment residuals below 1e-12 for m <= 8") {
  for (int m = 1; m <= 8; ++m) {
    std::vector<cplx> poles;
    for (int j = 0; j < m; ++j) poles.push_back(m == 1 ? I : cplx(-1.0 + 2.0 * j / (m - 1), 1.0));
    const auto alpha = solve_vandermonde(poles);
    for (int p = 0; p < m; ++p) {
      cplx s = 0.0;
      for (int j = 0; j < m; ++j) s += std::pow(poles[j], p) * alpha[j];
      INFO("m = " << m << ", p = " << p);
      CHECK(std::abs(s - (p == 0 ? 1.0 : 0.0)) < 1e-12);
    }
  }
  const std::vector<cplx> dup{I, I};
  CHECK_THROWS_AS(solve_vandermonde(dup), DuplicatePoles);
}

TEST_CASE("solve_banded: identity and a 5x5 tridiagonal against dense LU") {
  BandedComplexSystem id(4, 1);
  for (std::size_t i = 0; i < 4; ++i) id.set(i, i, 1.0);
  const std::vector<cplx> b{1.0, cplx(2, 1), -3.0, 0.5};
  const auto x = solve_banded(id, b);
  for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(x[i] - b[i]) < 1e-15);

  BandedComplexSystem t(5, 1);
  Eigen::MatrixXcd dense = Eigen::MatrixXcd::Zero(5, 5);
  for (std::size_t i = 0; i < 5; ++i) {
    const cplx d(4.0 + i, 0.3 * i), off(-1.0, 0.1 * i);
    t.set(i, i, d);
    dense(i, i) = d;
    if (i + 1 < 5) {
      t.set(i, i + 1, off);
      t.set(i + 1, i, off);
      dense(i, i + 1) = off;
      dense(i + 1, i) = off;
    }
  }
  Eigen::VectorXcd rhs(5);
  rhs << 1.0, 2.0, cplx(0, 1), -1.0, 0.5;
  const Eigen::VectorXcd ref = dense.partialPivLu().solve(rhs);
  const auto got = solve_banded(t, std::vector<cplx>(rhs.data(), rhs.data() + 5));
  for (int i = 0; i < 5; ++i) CHECK(std::abs(got[i] - ref(i)) < 1e-12);
}

TEST_CASE("solve_banded: complex shift of a real system with real rhs") {
  BandedComplexSystem t(50, 1);
  for (std::size_t i = 0; i < 50; ++i) {
    t.set(i, i, cplx(2.0 - 0.3, -0.05));  // T - (0.3 + 0.05i)
    if (i + 1 < 50) {
      t.set(i, i + 1, -1.0);
      t.set(i + 1, i, -1.0);
    }
  }
  const auto x = solve_banded(t, std::vector<cplx>(50, 1.0));
  double im = 0.0;
  for (cplx v : x) im = std::max(im, std::abs(v.imag()));
  CHECK(im > 1e-3);
}

TEST_CASE("solve_banded agrees with dense elimination on random systems") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> size(2, 200), band(1, 4);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = size(rng), b = std::min<std::size_t>(band(rng), n - 1);
    BandedComplexSystem s(n, b);
    Eigen::MatrixXcd dense = Eigen::MatrixXcd::Zero(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = (i > b ? i - b : 0); j <= std::min(n - 1, i + b); ++j) {
        cplx v(u(rng), u(rng));
        if (i == j) v += cplx(2.0 * b + 2.0, u(rng));  // diagonally dominant
        s.set(i, j, v);
        dense(i, j) = v;
      }
    Eigen::VectorXcd rhs(n);
    for (std::size_t i = 0; i < n; ++i) rhs(i) = cplx(u(rng), u(rng));
    const Eigen::VectorXcd ref = dense.partialPivLu().solve(rhs);
    const auto got = solve_banded(s, std::vector<cplx>(rhs.data(), rhs.data() + n));
    Eigen::VectorXcd g(n);
    for (std::size_t i = 0; i < n; ++i) g(i) = got[i];
    INFO("trial " << trial << ", n = " << n << ", b = " << b);
    CHECK((g - ref).norm() / ref.norm() < 1e-10);
  }
}

TEST_CASE("solve_banded reports a singular system") {
  BandedComplexSystem z(3, 1);
  CHECK_THROWS_AS(solve_banded(z, std::vector<cplx>(3, 1.0)), SingularSystem);
}

TEST_CASE("cubic roots: lambda = 0 keeps only the interior root") {
  const auto r = cubic_roots_in_interval(0.0, {-1.0, 1.0});
  REQUIRE(r.size() == 1);
  CHECK(std::abs(r[0].x) < 1e-15);
}

TEST_CASE("cubic roots: the spectral edge gives a flagged double root") {
  const double s3 = 1.0 / std::sqrt(3.0);
  auto r = cubic_roots_in_interval(cubic_edge, {-2.0, 2.0});
  REQUIRE(r.size() == 2);
  CHECK(std::abs(r[0].x + s3) < 1e-7);
  CHECK(r[0].multiplicity == 2);
  CHECK(std::abs(r[1].x - 2.0 * s3) < 1e-14);
  CHECK(r[1].multiplicity == 1);
  // On (-1, 1) only the double root survives.
  r = cubic_roots_in_interval(cubic_edge, {-1.0, 1.0});
  REQUIRE(r.size() == 1);
  CHECK(r[0].multiplicity == 2);
  // Without merging, a level just inside the edge keeps both close roots.
  r = cubic_roots_in_interval(-cubic_edge + 1e-14, {-1.0, 1.0}, 0.0);
  REQUIRE(r.size() == 2);
  CHECK(r[0].multiplicity == 1);
  CHECK(r[1].multiplicity == 1);
  CHECK(r[0].x < s3);
  CHECK(r[1].x > s3);
}

TEST_CASE("cubic roots: lambda = 0.1 against bisection") {
  const auto r = cubic_roots_in_interval(0.1, {-2.0, 2.0});
  REQUIRE(r.size() == 3);
  const double s3 = 1.0 / std::sqrt(3.0);
  const double ref[] = {bisect(0.1, -2.0, -s3), bisect(0.1, -s3, s3), bisect(0.1, s3, 2.0)};
  for (int i = 0; i < 3; ++i) CHECK(std::abs(r[i].x - ref[i]) < 1e-13);
  CHECK(cubic_roots_in_interval(0.1, {-1.0, 1.0}).size() == 2);
}

TEST_CASE("cubic roots: counts over random levels") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> inside(-cubic_edge, cubic_edge), outside(cubic_edge, 1.5);
  for (int i = 0; i < 1000; ++i) {
    const double in = inside(rng);
    if (std::abs(std::abs(in) - cubic_edge) < 1e-12) continue;
    CHECK(cubic_roots_in_interval(in, {-2.0, 2.0}).size() == 3);
    const double out = (i % 2 ? 1.0 : -1.0) * outside(rng);
    if (std::abs(out) == cubic_edge) continue;
    CHECK(cubic_roots_in_interval(out, {-2.0, 2.0}).size() == 1);
  }
}

TEST_CASE("fit_loglog_slope") {
  std::vector<SweepPoint> line{{0.1, 0.1}, {0.01, 0.01}, {0.001, 0.001}};
  CHECK(std::abs(fit_loglog_slope(line) - 1.0) < 1e-14);
  std::vector<SweepPoint> cube{{0.1, 1e-3}, {0.05, 1.25e-4}, {0.01, 1e-6}};
  CHECK(std::abs(fit_loglog_slope(cube) - 3.0) < 1e-12);

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> noise(-0.01, 0.01);
  std::vector<SweepPoint> noisy;
  for (int j = 0; j < 13; ++j) {
    const double e = std::pow(10.0, -0.25 * j);
    noisy.push_back({e, e * e * e * (1.0 + noise(rng))});
  }
  CHECK(std::abs(fit_loglog_slope(noisy) - 3.0) < 0.05);

  std::vector<SweepPoint> bad{{0.1, 0.0}, {0.01, 1.0}, {0.001, 1.0}};
  CHECK_THROWS_AS(fit_loglog_slope(bad), NonpositiveValue);
}
