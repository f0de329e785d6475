#include "kgheun/powers.hpp"

#include <cmath>
#include <numbers>

namespace kgheun {

namespace {

bool is_real_integer(Complex p, int& n) {
  if (p.imag() != 0.0) return false;
  const double r = std::round(p.real());
  if (r != p.real() || std::abs(r) > 1e6) return false;
  n = static_cast<int>(r);
  return true;
}

}  // namespace

Complex exp_i_pi(Complex p) {
  if (p.imag() == 0.0) {
    double r = std::fmod(p.real(), 2.0);
    if (r < 0) r += 2.0;
    if (r == 0.0) return {1.0, 0.0};
    if (r == 0.5) return {0.0, 1.0};
    if (r == 1.0) return {-1.0, 0.0};
    if (r == 1.5) return {0.0, -1.0};
  }
  return std::exp(Complex(-std::numbers::pi * p.imag(), std::numbers::pi * p.real()));
}

Complex int_pow(Complex z, int n) {
  if (n < 0) return 1.0 / int_pow(z, -n);
  Complex result = 1.0;
  Complex base = z;
  while (n > 0) {
    if (n & 1) result *= base;
    base *= base;
    n >>= 1;
  }
  return result;
}

Complex pow_z(Complex z, Complex p) {
  if (p == Complex(0.0)) return 1.0;
  int n = 0;
  if (is_real_integer(p, n)) {
    if (z == Complex(0.0) && n < 0) throw Error(ErrorKind::singular_point, "negative power of zero");
    return int_pow(z, n);
  }
  if (z == Complex(0.0)) {
    if (p.real() > 0) return 0.0;
    throw Error(ErrorKind::singular_point, "non-positive fractional power of zero");
  }
  return std::exp(p * std::log(z));
}

Complex pow_zm1(Complex z, Complex p) {
  if (p == Complex(0.0)) return 1.0;
  int n = 0;
  if (is_real_integer(p, n)) return pow_z(z - 1.0, p);
  if (z.real() < 1.0) return exp_i_pi(p) * pow_z(1.0 - z, p);
  return pow_z(z - 1.0, p);
}

}  // namespace kgheun
