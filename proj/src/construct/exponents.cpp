#include <algorithm>
#include <cmath>

#include "kgheun/construct.hpp"

namespace kgheun::construct {

namespace {

constexpr double kDoubleRootTol = 1e-8;

// P(z) = [(E^2 - m^2 c^4) r - 2 E v + w] / (hbar c)^2.
std::array<Complex, 5> p_poly(const RVWPolys& p, const QuerySpec& q) {
  const double hc2 = q.constants.hbar_c() * q.constants.hbar_c();
  const Complex e2 = q.E * q.E - q.mc2() * q.mc2();
  std::array<Complex, 5> out{};
  for (int k = 0; k < 5; ++k) out[k] = (e2 * p.r[k] - 2.0 * q.E * p.v[k] + p.w[k]) / hc2;
  return out;
}

}  // namespace

BranchTriple parse_branch(const std::string& text) {
  if (text.size() != 3) throw Error(ErrorKind::config, "branch must be three characters from {+,-}");
  BranchTriple out{};
  for (int i = 0; i < 3; ++i) {
    if (text[i] == '+') out[i] = Sign::plus;
    else if (text[i] == '-') out[i] = Sign::minus;
    else throw Error(ErrorKind::config, "branch must be three characters from {+,-}");
  }
  return out;
}

std::string branch_string(const BranchTriple& b) {
  std::string s;
  for (Sign x : b) s += (x == Sign::plus ? '+' : '-');
  return s;
}

Complex quadratic_root(Complex b, Complex c, Sign sign, bool* double_root) {
  const Complex s = std::sqrt(b * b - 4.0 * c);
  const bool dbl = std::abs(s) <= kDoubleRootTol * std::max(1.0, std::abs(b));
  if (double_root) *double_root = dbl;
  if (dbl) return -b / 2.0;
  Complex plus = (-b + s) / 2.0;
  Complex minus = (-b - s) / 2.0;
  // The smaller root from the product of roots avoids cancellation.
  if (std::abs(plus) >= std::abs(minus)) {
    if (plus != Complex(0.0)) minus = c / plus;
  } else {
    plus = c / minus;
  }
  return sign == Sign::plus ? plus : minus;
}

ExponentQuadratics exponent_quadratics(const RVWPolys& p, FamilyId family, const QuerySpec& query) {
  query.validate();
  const auto P = p_poly(p, query);
  Complex P1sum = 0.0;
  for (Complex c : P) P1sum += c;
  ExponentQuadratics out;
  out.b = {Complex(0.0), Complex(-(1.0 - family.m1.value())), Complex(-(1.0 - family.m2.value()))};
  out.c = {P[4], P[0], P1sum};
  return out;
}

std::array<double, 3> ExponentQuadratics::residuals(const Prefactor& pf) const {
  const std::array<Complex, 3> t = {pf.a0, pf.a1, pf.a2};
  std::array<double, 3> out{};
  for (int i = 0; i < 3; ++i) {
    const double scale = std::max({std::norm(t[i]), std::abs(b[i] * t[i]), std::abs(c[i]), 1e-300});
    out[i] = std::abs(t[i] * t[i] + b[i] * t[i] + c[i]) / scale;
  }
  return out;
}

Prefactor exponents_for(const RVWPolys& p, FamilyId family, const QuerySpec& query, const BranchTriple& branch) {
  const ExponentQuadratics eq = exponent_quadratics(p, family, query);
  Prefactor pf;
  pf.signs = branch;
  bool d0 = false, d1 = false, d2 = false;
  pf.a0 = quadratic_root(eq.b[0], eq.c[0], branch[0], &d0);
  pf.a1 = quadratic_root(eq.b[1], eq.c[1], branch[1], &d1);
  pf.a2 = quadratic_root(eq.b[2], eq.c[2], branch[2], &d2);
  pf.double_root = {d0, d1, d2};
  return pf;
}

std::vector<Prefactor> exponents(const RVWPolys& p, FamilyId family, const QuerySpec& query) {
  std::vector<Prefactor> out;
  for (int mask = 0; mask < 8; ++mask) {
    const BranchTriple b = {(mask & 4) ? Sign::minus : Sign::plus, (mask & 2) ? Sign::minus : Sign::plus,
                            (mask & 1) ? Sign::minus : Sign::plus};
    Prefactor pf = exponents_for(p, family, query, b);
    bool duplicate = false;
    for (int i = 0; i < 3; ++i) {
      if (pf.double_root[i] && b[i] == Sign::minus) duplicate = true;
    }
    if (!duplicate) out.push_back(pf);
  }
  return out;
}

HeunParams heun_params(const Prefactor& pf, const RVWPolys& p, FamilyId family, const QuerySpec& query) {
  query.validate();
  const auto P = p_poly(p, query);
  const double m1 = family.m1.value();
  const double m2 = family.m2.value();
  HeunParams h;
  h.gamma = 2.0 * pf.a1 + m1;
  h.delta = 2.0 * pf.a2 + m2;
  h.epsilon = 2.0 * pf.a0;
  h.alpha = pf.a0 * (m1 + m2 + 2.0 * (pf.a1 + pf.a2 - pf.a0)) + P[3];
  h.q = pf.a1 * (2.0 - m1 - m2) + (2.0 * pf.a1 + m1) * (pf.a0 - pf.a1 - pf.a2) + P[1];
  return h;
}

}  // namespace kgheun::construct
