#include "kgheun/catalog.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "kgheun/powers.hpp"

namespace kgheun::catalog {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPoleTol = 1e-12;

// (m1_x2, m2_x2) of rows 1..9.
constexpr std::array<std::array<int, 2>, 9> kRows = {{
    {0, 0}, {1, -1}, {1, 0}, {1, 1}, {2, -2}, {2, -1}, {2, 0}, {2, 1}, {2, 2},
}};

struct RowTerm {
  int which;  // 0: V0, 1: V1, 2: V2
  int z_pow;
  int zm1_pow;
};

std::vector<RowTerm> row_terms(int row) {
  switch (row) {
    case 1: return {{0, 0, 0}, {1, -1, 0}, {2, 0, -1}};
    case 2:
    case 3:
    case 6: return {{0, 0, 0}, {1, 0, -1}};
    case 4:
    case 8: return {{0, 0, 0}, {1, 1, 0}};
    case 5: return {{0, 0, 0}, {1, 0, -1}, {2, 0, -2}};
    case 7: return {{0, 0, 0}, {1, 1, 0}, {2, 0, -1}};
    case 9: return {{0, 0, 0}, {1, 1, 0}, {2, 2, 0}};
    default: throw Error(ErrorKind::config, "row must be in 1..9");
  }
}

Complex strength(const PotentialSpec& spec, int which) {
  switch (which) {
    case 0: return spec.V0;
    case 1: return spec.V1;
    default: return spec.V2;
  }
}

bool is_real(Complex v) { return v.imag() == 0.0; }

PotentialSpec with_family(const PotentialSpec& spec, FamilyId family, Complex sigma) {
  PotentialSpec out = spec;
  out.family = family;
  out.sigma = sigma;
  return out;
}

// Closed forms x(z) = x0 + sigma * S(z) of the canonical rows, written with
// pow_zm1's branch so that dS/dz = sigma / rho(z) on both z > 1 and 0 < z < 1.
Complex canonical_s_of_z(int row, Complex z) {
  switch (row) {
    case 1: return z;
    case 2: {
      const Complex u = pow_zm1(z, 0.5);
      return pow_z(z, 0.5) * u - std::asinh(u);
    }
    case 3: return 2.0 * pow_z(z, 0.5);
    case 4: return 2.0 * std::asinh(pow_zm1(z, 0.5));
    case 5: return z - std::log(z);
    case 6: {
      const Complex u = pow_zm1(z, 0.5);
      return 2.0 * (u - std::atan(u));
    }
    case 7: return std::log(z);
    case 8: return 2.0 * std::atan(pow_zm1(z, 0.5));
    case 9: return std::log((1.0 - z) / z);
    default: throw Error(ErrorKind::config, "row must be in 1..9");
  }
}

// dS/dz = z^{-m1} (z-1)^{-m2}.
Complex canonical_ds_dz(FamilyId f, Complex z) {
  return 1.0 / (pow_z(z, f.m1.value()) * pow_zm1(z, f.m2.value()));
}

// Real function on a real interval, bisection-safeguarded Newton.
template <typename F, typename D>
double solve_monotone(F g, D dg, double target, double lo, double hi) {
  double z = 0.5 * (lo + hi);
  for (int iter = 0; iter < 300; ++iter) {
    const double f = g(z) - target;
    if (f == 0.0) return z;
    if (f < 0) lo = z; else hi = z;
    const double d = dg(z);
    double next = (d != 0.0 && std::isfinite(d)) ? z - f / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - z) <= 4 * std::numeric_limits<double>::epsilon() * std::abs(z) ||
        hi - lo <= 4 * std::numeric_limits<double>::epsilon() * std::abs(hi)) {
      return next;
    }
    z = next;
  }
  return z;
}

// Rows 2 and 6: invert S(z) = s.
Complex invert_implicit(int row, FamilyId f, Complex s, bool real_eval) {
  const auto S = [row](Complex z) { return canonical_s_of_z(row, z); };
  const auto dS = [f](Complex z) { return canonical_ds_dz(f, z); };
  const double scale = 1.0 + std::abs(s);
  const bool on_real = std::abs(s.imag()) <= 1e-13 * scale;
  const bool on_imag = std::abs(s.real()) <= 1e-13 * scale;

  auto real_branch = [&](double target) -> double {
    if (target < 0) throw Error(ErrorKind::domain, "x lies before the turning point x0 of the monotone branch");
    double lo = 1.0;
    double hi = 2.0;
    while (S(hi).real() < target) {
      lo = hi;
      hi *= 2.0;
      if (hi > 1e300) throw Error(ErrorKind::inversion, "could not bracket the inverse coordinate map");
    }
    return solve_monotone([&](double z) { return S(z).real(); },
                          [&](double z) { return dS(z).real(); }, target, lo, hi);
  };
  auto imag_branch = [&](double target) -> double {
    // Im S increases from S(0+) to 0 on (0, 1).
    const double floor = S(std::numeric_limits<double>::min()).imag();
    if (target >= 0 || target <= floor) {
      throw Error(ErrorKind::domain, "imaginary coordinate outside the image of (0, 1)");
    }
    return solve_monotone([&](double z) { return S(z).imag(); },
                          [&](double z) { return dS(z).imag(); }, target, 0.0, 1.0);
  };

  Complex z;
  if (on_real) {
    z = real_branch(s.real());
  } else if (real_eval) {
    throw Error(ErrorKind::domain, "non-real x on a real coordinate map");
  } else if (on_imag && s.imag() < 0) {
    z = imag_branch(s.imag());
  } else {
    z = std::abs(s.real()) >= std::abs(s.imag()) && s.real() > 0 ? real_branch(s.real())
                                                                   : Complex(0.5);
  }
  // Complex Newton polish (absorbs rounding-level off-axis parts of s).
  for (int iter = 0; iter < 60; ++iter) {
    const Complex step = (S(z) - s) / dS(z);
    Complex next = z - step;
    if (!(std::isfinite(next.real()) && std::isfinite(next.imag()))) break;
    z = next;
    if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(z))) break;
  }
  if (std::abs(S(z) - s) > 1e-12 * std::max(1.0, std::abs(s))) {
    throw Error(ErrorKind::inversion, "implicit coordinate map did not converge");
  }
  return z;
}

Complex canonical_x_to_z(const PotentialSpec& spec, int row, Complex x) {
  const Complex s = (x - spec.x0) / spec.sigma;
  const bool real_eval = spec.real_coordinates() && is_real(x);
  switch (row) {
    case 1: return s;
    case 3: return s * s / 4.0;
    case 4: {
      const Complex c = std::cosh(s / 2.0);
      return c * c;
    }
    case 5: {
      if (std::abs(s.imag()) > 1e-14 * (1.0 + std::abs(s))) {
        throw Error(ErrorKind::domain, "the Lambert coordinate map is evaluated on real x only");
      }
      const double arg = -std::exp(-s.real());
      return -specfun::lambert_w(spec.w_branch, arg);
    }
    case 7: return std::exp(s);
    case 8: {
      const Complex c = std::cos(s / 2.0);
      if (std::abs(c) < 1e-300) throw Error(ErrorKind::domain, "sec^2 map evaluated at its pole");
      return 1.0 / (c * c);
    }
    case 9: return 1.0 / (std::exp(s) + 1.0);
    case 2:
    case 6: return invert_implicit(row, FamilyId::from_row(row), s, real_eval);
    default: throw Error(ErrorKind::config, "row must be in 1..9");
  }
}

Complex evaluate_terms(const std::vector<PotentialTerm>& terms, Complex z) {
  Complex v = 0.0;
  for (const auto& t : terms) {
    // Poles belong to the family's formula, whatever the strength.
    if (t.z_pow < 0 && std::abs(z) <= kPoleTol) throw PoleError("potential pole at z = 0", 0.0);
    if (t.zm1_pow < 0 && std::abs(z - 1.0) <= kPoleTol) throw PoleError("potential pole at z = 1", 1.0);
    if (t.coef == Complex(0.0)) continue;
    v += t.coef * int_pow(z, t.z_pow) * int_pow(z - 1.0, t.zm1_pow);
  }
  return v;
}

}  // namespace

HalfInt HalfInt::from_twice(int twice) {
  if (twice < -2 || twice > 2) throw Error(ErrorKind::config, "half-integer exponent outside [-1, 1]");
  return HalfInt(twice);
}

std::string HalfInt::str() const {
  if (twice_ % 2 == 0) return std::to_string(twice_ / 2);
  return std::to_string(twice_) + "/2";
}

bool admissible(int m1_x2, int m2_x2) {
  return m1_x2 >= -2 && m1_x2 <= 2 && m2_x2 >= -2 && m2_x2 <= 2 && m1_x2 + m2_x2 >= 0 &&
         m1_x2 + m2_x2 <= 4;
}

FamilyId FamilyId::from_twice(int m1_x2, int m2_x2) {
  if (!admissible(m1_x2, m2_x2)) {
    std::ostringstream msg;
    msg << "(m1, m2) = (" << m1_x2 << "/2, " << m2_x2 << "/2) is not an admissible pair";
    throw Error(ErrorKind::config, msg.str());
  }
  return {HalfInt::from_twice(m1_x2), HalfInt::from_twice(m2_x2)};
}

FamilyId FamilyId::from_row(int row) {
  if (row < 1 || row > 9) throw Error(ErrorKind::config, "row must be in 1..9");
  return from_twice(kRows[row - 1][0], kRows[row - 1][1]);
}

int FamilyId::row() const {
  for (int i = 0; i < 9; ++i) {
    if (kRows[i][0] == m1.twice() && kRows[i][1] == m2.twice()) return i + 1;
  }
  return 0;
}

bool FamilyId::canonical() const { return row() != 0; }

std::string FamilyId::label() const { return "(" + m1.str() + ", " + m2.str() + ")"; }

std::vector<FamilyId> all_families() {
  std::vector<FamilyId> out;
  for (int a = 2; a >= -2; --a) {
    for (int b = 2; b >= -2; --b) {
      if (admissible(a, b)) out.push_back(FamilyId::from_twice(a, b));
    }
  }
  return out;
}

std::vector<FamilyId> canonical_families() {
  std::vector<FamilyId> out;
  for (int row = 1; row <= 9; ++row) out.push_back(FamilyId::from_row(row));
  return out;
}

void PhysicalConstants::validate() const {
  if (!(hbar > 0) || !(c > 0)) throw Error(ErrorKind::config, "hbar and c must be positive");
}

bool has_v2(FamilyId family) {
  const int row = mirror(family).canonical.row();
  return row == 1 || row == 5 || row == 7 || row == 9;
}

PotentialSpec PotentialSpec::make(FamilyId family, Complex V0, Complex V1, Complex V2, Complex x0,
                                  Complex sigma) {
  PotentialSpec spec;
  spec.family = family;
  spec.V0 = V0;
  spec.V1 = V1;
  spec.V2 = has_v2(family) ? V2 : Complex(0.0);
  spec.x0 = x0;
  spec.sigma = sigma;
  spec.validate();
  return spec;
}

void PotentialSpec::validate() const {
  if (sigma == Complex(0.0)) throw Error(ErrorKind::config, "sigma must be nonzero");
  for (Complex v : {V0, V1, V2, x0, sigma}) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw Error(ErrorKind::config, "potential parameters must be finite");
    }
  }
  (void)FamilyId::from_twice(family.m1.twice(), family.m2.twice());
}

bool PotentialSpec::real_coordinates() const { return is_real(x0) && is_real(sigma); }

std::vector<PotentialTerm> PotentialSpec::terms() const {
  const MirrorResult m = mirror(family);
  std::vector<PotentialTerm> out;
  for (const RowTerm& t : row_terms(m.canonical.row())) {
    const Complex coef = strength(*this, t.which);
    if (m.transform.swap_z) {
      // V_C(1 - z): z^a (z-1)^b -> (1-z)^a (-z)^b = (-1)^{a+b} z^b (z-1)^a.
      const double sign = ((t.z_pow + t.zm1_pow) % 2 == 0) ? 1.0 : -1.0;
      out.push_back({sign * coef, t.zm1_pow, t.z_pow});
    } else {
      out.push_back({coef, t.z_pow, t.zm1_pow});
    }
  }
  return out;
}

MirrorResult mirror(FamilyId family) {
  (void)FamilyId::from_twice(family.m1.twice(), family.m2.twice());
  if (family.canonical()) return {family, MirrorTransform{}};
  MirrorTransform t;
  t.identity = false;
  t.swap_z = true;
  // -e^{i pi (m1 - m2)}: keeps dz/dx = z^m1 (z-1)^m2 / sigma for z_F = 1 - z_C.
  t.sigma_factor = -exp_i_pi((family.m1.twice() - family.m2.twice()) / 2.0);
  return {FamilyId{family.m2, family.m1}, t};
}

RealDomain real_domain(FamilyId family) {
  switch (mirror(family).canonical.row()) {
    case 1:
    case 7:
    case 9: return {-kInf, kInf};
    case 5: return {1.0, kInf};
    case 8: return {0.0, std::numbers::pi};
    default: return {0.0, kInf};
  }
}

Complex map_x_to_z(const PotentialSpec& spec, Complex x) {
  spec.validate();
  const MirrorResult m = mirror(spec.family);
  if (m.transform.identity) return canonical_x_to_z(spec, m.canonical.row(), x);
  const PotentialSpec c = with_family(spec, m.canonical, spec.sigma * m.transform.sigma_factor);
  return 1.0 - canonical_x_to_z(c, m.canonical.row(), x);
}

Complex map_z_to_x(const PotentialSpec& spec, Complex z) {
  spec.validate();
  const MirrorResult m = mirror(spec.family);
  Complex zc = z;
  Complex sigma = spec.sigma;
  if (!m.transform.identity) {
    zc = 1.0 - z;
    sigma *= m.transform.sigma_factor;
  }
  const int row = m.canonical.row();
  // Logarithmic or arctangent singularities of the inverse formulas.
  const bool at0 = std::abs(zc) <= kPoleTol;
  const bool at1 = std::abs(zc - 1.0) <= kPoleTol;
  if ((at0 && (row == 5 || row == 6 || row == 7 || row == 8 || row == 9)) || (at1 && row == 9)) {
    throw Error(ErrorKind::domain, "inverse coordinate map is singular at this z");
  }
  return spec.x0 + sigma * canonical_s_of_z(row, zc);
}

Complex rho(const PotentialSpec& spec, Complex z) {
  spec.validate();
  const int m1x2 = spec.family.m1.twice();
  const int m2x2 = spec.family.m2.twice();
  if ((m1x2 < 0 || m1x2 % 2 != 0) && std::abs(z) <= kPoleTol) {
    throw Error(ErrorKind::domain, "rho has a pole or branch point at z = 0");
  }
  if ((m2x2 < 0 || m2x2 % 2 != 0) && std::abs(z - 1.0) <= kPoleTol) {
    throw Error(ErrorKind::domain, "rho has a pole or branch point at z = 1");
  }
  return pow_z(z, spec.family.m1.value()) * pow_zm1(z, spec.family.m2.value()) / spec.sigma;
}

Complex potential_of_z(const PotentialSpec& spec, Complex z) { return evaluate_terms(spec.terms(), z); }

Complex potential_value(const PotentialSpec& spec, Complex x) {
  spec.validate();
  const MirrorResult m = mirror(spec.family);
  if (m.transform.identity) return potential_of_z(spec, map_x_to_z(spec, x));
  const PotentialSpec c = with_family(spec, m.canonical, spec.sigma * m.transform.sigma_factor);
  return potential_of_z(c, map_x_to_z(c, x));
}

std::string potential_formula(FamilyId family) {
  const MirrorResult m = mirror(family);
  std::string base;
  switch (m.canonical.row()) {
    case 1: base = "V0 + V1/z + V2/(z-1)"; break;
    case 2:
    case 3:
    case 6: base = "V0 + V1/(z-1)"; break;
    case 4:
    case 8: base = "V0 + V1*z"; break;
    case 5: base = "V0 + V1/(z-1) + V2/(z-1)^2"; break;
    case 7: base = "V0 + V1*z + V2/(z-1)"; break;
    case 9: base = "V0 + V1*z + V2*z^2"; break;
  }
  if (m.transform.identity) return base;
  return "V(1-z) with V = " + base;
}

std::string transformation_formula(FamilyId family) {
  const MirrorResult m = mirror(family);
  std::string base;
  switch (m.canonical.row()) {
    case 1: base = "z = (x-x0)/sigma"; break;
    case 2: base = "x = x0 + sigma*(sqrt(z(z-1)) - asinh(sqrt(z-1)))"; break;
    case 3: base = "z = (x-x0)^2/(4 sigma^2)"; break;
    case 4: base = "z = cosh^2((x-x0)/(2 sigma))"; break;
    case 5: base = "x = x0 + sigma*(z - log z), z = -W(-exp(-(x-x0)/sigma))"; break;
    case 6: base = "x = x0 + 2 sigma*(sqrt(z-1) - atan(sqrt(z-1)))"; break;
    case 7: base = "z = exp((x-x0)/sigma)"; break;
    case 8: base = "z = sec^2((x-x0)/(2 sigma))"; break;
    case 9: base = "z = 1/(exp((x-x0)/sigma) + 1)"; break;
  }
  if (m.transform.identity) return base;
  return "1 - z_C with z_C: " + base;
}

std::string subpotential_annotation(FamilyId family) {
  switch (mirror(family).canonical.row()) {
    case 1: return "₁F₁ (Coulomb)";
    case 5: return "conditionally solvable: ₁F₁";
    case 7: return "₁F₁ (exponential), ₂F₁ (Hulthén)";
    case 9: return "₂F₁ (Woods-Saxon)";
    default: return "-";
  }
}

}  // namespace kgheun::catalog
