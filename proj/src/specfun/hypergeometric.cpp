#include <algorithm>
#include <cmath>

#include "kgheun/powers.hpp"
#include "kgheun/specfun.hpp"

namespace kgheun::specfun {

namespace {

// Series are cheap, so they run to the rounding floor; the configured
// tolerance only decides whether a sum cut off by max_terms is accepted.
constexpr double kEps = 2.220446049250313e-16;

bool nonpositive_integer(Complex v) {
  const double r = std::round(v.real());
  return r <= 0 && std::abs(v - r) <= 1e-14 * std::max(1.0, std::abs(r));
}

Complex kummer_series(Complex a, Complex b, Complex z, const EvalConfig& cfg) {
  Complex sum = 1.0;
  Complex term = 1.0;
  double tail = INFINITY;
  const double threshold = 2.0 * (std::abs(a) + std::abs(b) + std::abs(z));
  for (int n = 0; n < cfg.max_terms; ++n) {
    term *= (a + double(n)) / (b + double(n)) * z / double(n + 1);
    sum += term;
    if (term == Complex(0.0)) return sum;
    const double ratio = std::abs((a + double(n + 1)) * z / ((b + double(n + 1)) * double(n + 2)));
    tail = n + 1 >= threshold && ratio < 0.5 ? std::abs(term) * ratio / (1.0 - ratio) : INFINITY;
    if (tail <= kEps * std::abs(sum)) return sum;
  }
  if (tail <= cfg.abs_tol + cfg.rel_tol * std::abs(sum)) return sum;
  throw ConvergenceError("1F1 series did not converge within max_terms", sum, std::abs(term),
                         cfg.max_terms);
}

Complex gauss_series(Complex a, Complex b, Complex c, Complex z, const EvalConfig& cfg) {
  Complex sum = 1.0;
  Complex term = 1.0;
  double tail = INFINITY;
  const double threshold = std::abs(a) + std::abs(b) + std::abs(c);
  for (int n = 0; n < cfg.max_terms; ++n) {
    term *= (a + double(n)) * (b + double(n)) / ((c + double(n)) * double(n + 1)) * z;
    sum += term;
    if (term == Complex(0.0)) return sum;
    const double next_ratio = std::abs((a + double(n + 1)) * (b + double(n + 1)) * z /
                                       ((c + double(n + 1)) * double(n + 2)));
    const double ratio = std::max(next_ratio, std::abs(z));
    tail = n + 1 >= threshold && ratio < 1.0 ? std::abs(term) * ratio / (1.0 - ratio) : INFINITY;
    if (tail <= kEps * std::abs(sum)) return sum;
  }
  if (tail <= cfg.abs_tol + cfg.rel_tol * std::abs(sum)) return sum;
  throw ConvergenceError("2F1 series did not converge within max_terms", sum, std::abs(term),
                         cfg.max_terms);
}

}  // namespace

Complex kummer_1f1(Complex a, Complex b, Complex z, const EvalConfig& cfg) {
  cfg.validate();
  if (nonpositive_integer(b)) throw PoleError("1F1 lower parameter is a nonpositive integer", b);
  if (z == Complex(0.0)) return 1.0;
  // Kummer's transformation keeps the summed terms of one sign for large negative arguments.
  if (z.real() < -2.0) return std::exp(z) * kummer_series(b - a, b, -z, cfg);
  return kummer_series(a, b, z, cfg);
}

Complex gauss_2f1(Complex a, Complex b, Complex c, Complex z, const EvalConfig& cfg) {
  cfg.validate();
  if (nonpositive_integer(c)) throw PoleError("2F1 lower parameter is a nonpositive integer", c);
  if (z == Complex(0.0)) return 1.0;
  const double r = std::abs(z);
  if (r <= 0.75) return gauss_series(a, b, c, z, cfg);
  if (z.imag() == 0.0 && z.real() < 0.0) {
    // Pfaff: 2F1(a, b; c; z) = (1 - z)^{-a} 2F1(a, c - b; c; z / (z - 1)).
    const Complex w = z / (z - 1.0);
    return pow_z(1.0 - z, -a) * gauss_series(a, c - b, c, w, cfg);
  }
  if (r < 1.0) return gauss_series(a, b, c, z, cfg);
  throw Error(ErrorKind::domain, "2F1 argument outside the unit disk with no applicable transformation");
}

}  // namespace kgheun::specfun
