#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "kgheun/specfun.hpp"
#include "oracles.hpp"

using namespace kgheun;
using namespace kgheun::specfun;

namespace {

std::mt19937_64& rng() {
  static std::mt19937_64 g(7);
  return g;
}

Complex in_disk(double r) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (;;) {
    const Complex c(u(rng()), u(rng()));
    if (std::abs(c) <= 1.0) return r * c;
  }
}

double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

TEST_CASE("heun_c trivial values") {
  const HeunParams p{1.5, 0.7, 0.3, 0.0, 0.0};
  CHECK(heun_c(p, 0.3) == Complex(1.0));
  const HeunParams g{1.0, 1.0, 0.4, 0.2, 0.1};
  CHECK(heun_c(g, 0.0) == Complex(1.0));
  CHECK(heun_c({Complex(0.3, 1.0), 2.0, -1.0, 0.5, 0.7}, 0.0) == Complex(1.0));
}

TEST_CASE("heun_c against mpmath and RK4") {
  const HeunParams p{1.0, 1.0, 0.4, 0.2, 0.1};
  CHECK(rel(heun_c(p, 0.5), 0.95328691474461413167) < 1e-13);
  CHECK(rel(heun_c(p, 0.8), 0.92952067551161476781) < 1e-12);
  CHECK(rel(heun_c(p, 0.5), oracle::heun_rk4(p, 0.5)) < 1e-10);
  CHECK(rel(heun_c(p, 0.8), oracle::heun_rk4(p, 0.8)) < 1e-10);
  const HeunParams c{Complex(1.2, 0.3), Complex(-0.4, 0.5), Complex(0.8, -0.6), Complex(0.3, 0.2), Complex(-0.5, 0.1)};
  for (Complex z : {Complex(0.3, 0.0), Complex(0.7, 0.2), Complex(-0.6, 0.5), Complex(0.9, -0.1)})
    CHECK(rel(heun_c(c, z), oracle::heun_rk4(c, z)) < 1e-10);
}

TEST_CASE("heun_c with alpha = q = 0 is identically one") {
  for (int k = 0; k < 100; ++k) {
    const HeunParams p{Complex(1.5) + in_disk(1.0), in_disk(2.0), in_disk(2.0), 0.0, 0.0};
    for (double z : {0.05, 0.45, 0.7, 0.95}) CHECK(heun_c(p, z) == Complex(1.0));
  }
}

TEST_CASE("heun_c series agrees with direct integration on random parameters") {
  int bad = 0;
  for (int k = 0; k < 100; ++k) {
    HeunParams p{in_disk(2.0), in_disk(2.0), in_disk(2.0), in_disk(2.0), in_disk(2.0)};
    // keep gamma away from the resonant nonpositive integers
    while (std::abs(p.gamma - std::round(p.gamma.real())) < 0.2 && p.gamma.real() < 0.5) p.gamma = in_disk(2.0);
    const double z = 0.05 + 0.4 * (k % 9) / 8.0;
    const EvalConfig cfg;
    const double d = rel(heun_c(p, z), oracle::heun_rk4(p, z));
    if (d > cfg.rel_tol * 10.0) {
      ++bad;
      MESSAGE(d, " ", p.gamma, p.delta, p.epsilon, p.alpha, p.q, " z=", z);
    }
  }
  CHECK(bad == 0);
}

TEST_CASE("heun_c is deterministic") {
  const HeunParams p{Complex(0.7, 0.2), 0.3, -1.1, 0.4, Complex(0.2, -0.9)};
  for (Complex z : {Complex(0.3, 0.0), Complex(1.4, 0.8), Complex(-2.0, 0.1)}) CHECK(heun_c(p, z) == heun_c(p, z));
}

TEST_CASE("heun_c jet matches finite differences") {
  const HeunParams p{Complex(1.3, 0.1), 0.6, -0.8, 0.35, Complex(0.1, 0.2)};
  const auto f = [&](Complex z) { return heun_c(p, z, EvalConfig::precise()); };
  for (Complex z : {Complex(0.25, 0.0), Complex(0.7, 0.1)}) {
    const auto j = heun_c_jet(p, z, EvalConfig::precise());
    CHECK(rel(j.value, f(z)) < 1e-15);
    CHECK(rel(j.first, oracle::d1(f, z, 1e-3)) < 1e-9);
    const auto df = [&](Complex t) { return heun_c_jet(p, t, EvalConfig::precise()).first; };
    CHECK(rel(j.second, oracle::d1(df, z, 1e-3)) < 1e-8);
  }
}

TEST_CASE("resonant gamma") {
  // gamma = 0: the order-0 equation forces q = 0.
  CHECK_NOTHROW(heun_c({0.0, 0.5, 0.6, 0.0, 0.0}, 0.3));
  CHECK(std::abs(heun_c({0.0, 0.0, 1.2, 0.0, 0.0}, 0.3) - 1.0) < 1e-15);
  try {
    heun_c({0.0, 0.5, 0.6, 0.2, 0.4}, 0.3);
    FAIL("expected a degenerate error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::degenerate);
  }
  CHECK_THROWS_AS(require_analytic_at_origin({-1.0, 0.5, 0.6, 0.2, 0.4}), Error);
  CHECK_NOTHROW(require_analytic_at_origin({0.5, 0.5, 0.6, 0.2, 0.4}));
}

TEST_CASE("heun_c rejects non-finite parameters and singular targets") {
  const double nan = std::nan("");
  CHECK_THROWS_AS(heun_c({nan, 0.5, 0.6, 0.2, 0.4}, 0.3), Error);
  CHECK_THROWS_AS(heun_c({1.5, 0.5, 0.6, 0.2, 0.4}, 1.0), Error);
}

TEST_CASE("mirrored parameters") {
  const HeunParams p{Complex(1.2, 0.3), Complex(-0.4, 0.5), Complex(0.8, -0.6), Complex(0.3, 0.2), Complex(-0.5, 0.1)};
  const auto m = p.mirrored();
  CHECK(m.gamma == p.delta);
  CHECK(m.delta == p.gamma);
  CHECK(m.epsilon == -p.epsilon);
  const auto mm = m.mirrored();
  CHECK(std::abs(mm.alpha - p.alpha) < 1e-15);
  CHECK(std::abs(mm.q - p.q) < 1e-15);
  // u(1 - z) solves the mirrored equation: compare its local solution at 1 with RK4 on that equation.
  CHECK(rel(heun_c(m, 0.4), oracle::heun_rk4(m, 0.4)) < 1e-10);
}

TEST_CASE("kummer_1f1 values") {
  CHECK(kummer_1f1(0.7, 1.3, 0.0) == Complex(1.0));
  CHECK(std::abs(kummer_1f1(1.0, 1.0, 1.0) - std::numbers::e) / std::numbers::e < 1e-14);
  CHECK(rel(kummer_1f1(0.5, 1.5, -0.25), 0.92256201282558489751) < 1e-14);
  CHECK(rel(kummer_1f1(0.5, 1.5, -0.25), oracle::kummer_sum(0.5, 1.5, -0.25)) < 1e-13);
  for (Complex z : {Complex(3.0, 1.0), Complex(-8.0, 0.0), Complex(0.2, -5.0)}) {
    const Complex a(0.3, 0.4), b(1.7, -0.2);
    CHECK(rel(kummer_1f1(a, b, z, EvalConfig::precise()), oracle::kummer_sum(a, b, z, 400)) < 1e-11);
  }
}

TEST_CASE("kummer_1f1 contiguous relation and Kummer transformation") {
  for (int k = 0; k < 50; ++k) {
    const Complex a = in_disk(2.0), b = Complex(2.5) + in_disk(2.0), z = in_disk(3.0);
    const Complex lhs = kummer_1f1(a, b, z);
    CHECK(rel(lhs, kummer_1f1(a - 1.0, b, z) + z / b * kummer_1f1(a, b + 1.0, z)) < 1e-10);
    CHECK(rel(lhs, std::exp(z) * kummer_1f1(b - a, b, -z)) < 1e-10);
  }
}

TEST_CASE("kummer_1f1 rejects nonpositive integer b") {
  CHECK_THROWS_AS(kummer_1f1(0.5, -2.0, 0.3), Error);
  CHECK_THROWS_AS(kummer_1f1(0.5, 0.0, 0.3), Error);
}

TEST_CASE("kummer_1f1 reports an exhausted term budget") {
  EvalConfig cfg;
  cfg.max_terms = 8;
  try {
    kummer_1f1(0.5, 1.5, 20.0, cfg);
    FAIL("expected a convergence error");
  } catch (const ConvergenceError& e) {
    CHECK(e.kind() == ErrorKind::convergence);
    CHECK(e.terms() == 8);
  }
}

TEST_CASE("gauss_2f1 values") {
  CHECK(gauss_2f1(0.3, 0.4, 1.7, 0.0) == Complex(1.0));
  CHECK(gauss_2f1(0.0, 2.2, 1.1, 0.6) == Complex(1.0));
  CHECK(rel(gauss_2f1(1.0, 1.0, 2.0, 0.5), 1.3862943611198906188) < 1e-13);
  for (double z : {-0.9, -0.4, 0.2, 0.5, 0.7, 0.85})
    CHECK(rel(gauss_2f1(1.0, 1.0, 2.0, z, EvalConfig::precise()), -std::log1p(-z) / z) < 1e-13);
  // 2F1(a, b; b; z) = (1 - z)^-a
  for (double z : {-3.0, -0.5, 0.4, 0.8})
    CHECK(rel(gauss_2f1(0.7, 1.3, 1.3, z), std::pow(1.0 - z, -0.7)) < 1e-11);
  CHECK_THROWS_AS(gauss_2f1(0.3, 0.4, -1.0, 0.2), Error);
}

TEST_CASE("lambert_w values") {
  CHECK(lambert_w(WBranch::principal, 0.0) == 0.0);
  CHECK(std::abs(lambert_w(WBranch::principal, std::numbers::e) - 1.0) < 1e-15);
  CHECK(std::abs(lambert_w(WBranch::lower, -std::exp(-1.0)) + 1.0) < 1e-7);
  CHECK(std::abs(lambert_w(WBranch::lower, -2.0 * std::exp(-2.0)) + 2.0) < 1e-14);
  CHECK_THROWS_AS(lambert_w(WBranch::principal, -0.5), Error);
  CHECK_THROWS_AS(lambert_w(WBranch::lower, 0.1), Error);
}

TEST_CASE("lambert_w residuals over log-spaced points") {
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const double x = -std::exp(-1.0) * std::pow(10.0, -12.0 * k / 999.0);
    for (auto br : {WBranch::principal, WBranch::lower}) {
      const double w = lambert_w(br, x);
      worst = std::max(worst, std::abs(w * std::exp(w) - x) / std::abs(x));
      if (br == WBranch::principal) CHECK(w >= -1.0);
      else CHECK(w <= -1.0);
    }
    const double y = std::pow(10.0, -10.0 + 20.0 * k / 999.0);
    const double w = lambert_w(WBranch::principal, y);
    worst = std::max(worst, std::abs(w * std::exp(w) - y) / y);
  }
  CHECK(worst < 1e-14);
}
