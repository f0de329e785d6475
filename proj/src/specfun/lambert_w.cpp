#include <cmath>
#include <limits>
#include <numbers>

#include "kgheun/specfun.hpp"

namespace kgheun::specfun {

namespace {

const double kInvE = std::exp(-1.0);

// Expansion about the branch point in p = +-sqrt(2(e x + 1)).
double branch_point_series(double p) {
  return -1.0 +
         p * (1.0 +
              p * (-1.0 / 3.0 +
                   p * (11.0 / 72.0 +
                        p * (-43.0 / 540.0 + p * (769.0 / 17280.0 + p * (-221.0 / 8505.0))))));
}

double initial_guess(WBranch branch, double x) {
  const double distance = x + kInvE;
  if (distance < 0.25) {
    const double p = std::sqrt(2.0 * std::numbers::e * distance);
    return branch_point_series(branch == WBranch::principal ? p : -p);
  }
  if (branch == WBranch::principal) {
    if (x < 3.0) {
      const double l = std::log1p(x);
      return l * (1.0 - std::log1p(l) / (2.0 + l));
    }
    const double l1 = std::log(x);
    const double l2 = std::log(l1);
    return l1 - l2 + l2 / l1;
  }
  // Lower branch, x in [-1/e + 0.25, 0).
  const double l1 = std::log(-x);
  const double l2 = std::log(-l1);
  return l1 - l2 + l2 / l1;
}

}  // namespace

double lambert_w(WBranch branch, double x) {
  if (std::isnan(x)) throw Error(ErrorKind::domain, "Lambert W of NaN");
  const double distance = x + kInvE;
  if (distance < -4 * std::numeric_limits<double>::epsilon()) {
    throw Error(ErrorKind::domain, "Lambert W argument below -1/e");
  }
  if (branch == WBranch::lower && x >= 0.0) {
    throw Error(ErrorKind::domain, "lower Lambert W branch requires -1/e <= x < 0");
  }
  if (distance <= 0.0) return -1.0;
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return x;

  double w = initial_guess(branch, x);
  if (distance < 1e-4) {
    // Near the branch point the series is already close; Halley polishes it.
    const double p = std::sqrt(2.0 * std::numbers::e * distance);
    w = branch_point_series(branch == WBranch::principal ? p : -p);
  }
  for (int iter = 0; iter < 50; ++iter) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double wp1 = w + 1.0;
    if (wp1 == 0.0) break;
    const double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
    const double step = f / denom;
    w -= step;
    if (std::abs(step) <= 2 * std::numeric_limits<double>::epsilon() * std::abs(w)) break;
  }
  if (branch == WBranch::principal && w < -1.0) w = -1.0;
  if (branch == WBranch::lower && w > -1.0) w = -1.0;
  return w;
}

}  // namespace kgheun::specfun
