#include <algorithm>
#include <cmath>

#include "kgheun/construct.hpp"

namespace kgheun::construct {

namespace {

// Adds coef * z^a (z-1)^b to out; a, b >= 0 and a + b <= 4.
void add_monomial(std::array<Complex, 5>& out, Complex coef, int a, int b) {
  if (a < 0 || b < 0 || a + b > 4) {
    throw Error(ErrorKind::structural, "potential term leaves r V or r V^2 outside the degree-4 polynomials");
  }
  double binom = 1.0;
  for (int k = 0; k <= b; ++k) {
    const double sign = ((b - k) % 2 == 0) ? 1.0 : -1.0;
    out[a + k] += coef * binom * sign;
    binom = binom * (b - k) / (k + 1);
  }
}

}  // namespace

void QuerySpec::validate() const {
  constants.validate();
  if (!std::isfinite(E.real()) || !std::isfinite(E.imag()) || !std::isfinite(mass) || mass < 0) {
    throw Error(ErrorKind::config, "energy must be finite and mass finite and non-negative");
  }
}

Complex poly_eval(const std::array<Complex, 5>& c, Complex z) {
  Complex acc = 0.0;
  for (int k = 4; k >= 0; --k) acc = acc * z + c[k];
  return acc;
}

RVWPolys polys_from_terms(FamilyId family, Complex sigma, const std::vector<catalog::PotentialTerm>& terms) {
  const int A = 2 - family.m1.twice();
  const int B = 2 - family.m2.twice();
  const Complex s2 = sigma * sigma;
  RVWPolys out;
  add_monomial(out.r, s2, A, B);
  for (const auto& t : terms) {
    if (t.coef == Complex(0.0)) continue;
    add_monomial(out.v, s2 * t.coef, A + t.z_pow, B + t.zm1_pow);
  }
  for (const auto& ti : terms) {
    for (const auto& tj : terms) {
      const Complex coef = ti.coef * tj.coef;
      if (coef == Complex(0.0)) continue;
      add_monomial(out.w, s2 * coef, A + ti.z_pow + tj.z_pow, B + ti.zm1_pow + tj.zm1_pow);
    }
  }
  return out;
}

RVWPolys polys(const PotentialSpec& spec) {
  spec.validate();
  return polys_from_terms(spec.family, spec.sigma, spec.terms());
}

}  // namespace kgheun::construct
