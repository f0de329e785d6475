#include "kgheun/conditional.hpp"

#include <cmath>
#include <cstdio>

#include "kgheun/powers.hpp"

namespace kgheun::conditional {

namespace {

constexpr double kSqrt3 = 1.7320508075688772;
constexpr double kEndpoint = 1e-9;

bool real(Complex v) { return v.imag() == 0.0; }

}  // namespace

CondSpec CondSpec::single(Complex sigma, catalog::PhysicalConstants constants) {
  CondSpec s;
  s.sigma = sigma;
  s.constants = constants;
  s.single_param = true;
  s.V0 = s.V0_effective();
  s.x0 = s.x0_effective();
  return s;
}

void CondSpec::validate() const {
  constants.validate();
  if (sigma == Complex(0.0)) throw Error(ErrorKind::config, "sigma must be nonzero");
}

Complex CondSpec::V0_effective() const {
  return single_param ? constants.hbar_c() / (2.0 * kSqrt3 * sigma) : V0;
}

Complex CondSpec::x0_effective() const { return single_param ? -sigma : x0; }

Complex CondSpec::V1() const { return -constants.hbar_c() / (kSqrt3 * sigma); }

Complex CondSpec::V2() const { return -kSqrt3 * constants.hbar_c() / (2.0 * sigma); }

catalog::PotentialSpec CondSpec::potential_spec() const {
  validate();
  return catalog::PotentialSpec::make(catalog::FamilyId::from_row(5), V0_effective(), V1(), V2(),
                                      x0_effective(), sigma);
}

Complex cond_z(const CondSpec& spec, double x) {
  spec.validate();
  const Complex x0 = spec.x0_effective();
  if (!real(x0) || !real(spec.sigma)) {
    throw Error(ErrorKind::domain, "the Lambert map is evaluated for real x0 and sigma only");
  }
  if (spec.single_param && x == 0.0) throw PoleError("x = 0 is the z = 1 endpoint of the potential", 1.0);
  if (spec.single_param && !(x > 0)) throw Error(ErrorKind::domain, "the single-parameter potential lives on x > 0");
  const double s = (x - x0.real()) / spec.sigma.real();
  const double arg = -std::exp(-s);
  const double z = -specfun::lambert_w(specfun::WBranch::principal, arg);
  if (z > 1.0 - kEndpoint) throw PoleError("x is at the z = 1 endpoint of the potential", z);
  return z;
}

Complex cond_potential(const CondSpec& spec, double x) {
  const Complex z = cond_z(spec, x);
  const Complex d = 1.0 / (z - 1.0);
  return spec.V0_effective() + spec.V1() * d + spec.V2() * d * d;
}

Complex cond_potential_closed(const CondSpec& spec, double x) {
  if (!spec.single_param) throw Error(ErrorKind::config, "the closed form needs the single-parameter spec");
  const Complex z = cond_z(spec, x);
  return spec.V0_effective() * z * (z - 4.0) / ((z - 1.0) * (z - 1.0));
}

CondSolutionParams cond_solution_params(const CondSpec& spec, const QuerySpec& query, SignPair signs) {
  spec.validate();
  query.validate();
  const double hc = query.constants.hbar_c();
  const double mc2 = query.mc2();
  const Complex V0 = spec.V0_effective();
  const Complex s1 = signs[0] == Sign::plus ? 1.0 : -1.0;
  const Complex s2 = signs[1] == Sign::plus ? 1.0 : -1.0;
  CondSolutionParams p;
  p.signs = signs;
  p.alpha1 = s1 * spec.sigma / hc * std::sqrt(mc2 * mc2 - query.E * query.E);
  const Complex ev = query.E - V0;
  p.eps = s2 * 2.0 * spec.sigma / hc * std::sqrt(mc2 * mc2 - ev * ev);
  if (p.eps == Complex(0.0)) throw Error(ErrorKind::degenerate, "eps = 0: the 1F1 parameter is undefined");
  p.a = p.alpha1 + ((1.0 - p.eps) / 2.0 - 2.0 / (3.0 * p.eps)) +
        (mc2 * mc2 - query.E * query.E) / (3.0 * p.eps * V0 * V0) + query.E / (p.eps * V0);
  return p;
}

CondWaveFunction::CondWaveFunction(CondSpec spec, QuerySpec query, CondSolutionParams params)
    : spec_(spec), query_(query), params_(params) {}

Complex CondWaveFunction::at_z(Complex z) const {
  const auto& p = params_;
  const auto cfg = specfun::EvalConfig::precise();
  return pow_z(z, p.alpha1) * std::sqrt(1.0 - z) * std::exp(p.eps * z / 2.0) *
         specfun::kummer_1f1(p.a, 1.0 + 2.0 * p.alpha1, -p.eps * z, cfg);
}

Complex CondWaveFunction::operator()(double x) const { return at_z(cond_z(spec_, x)); }

CondWaveFunction cond_solution(const CondSpec& spec, const QuerySpec& query, SignPair signs) {
  spec.validate();
  if (query.constants.hbar != spec.constants.hbar || query.constants.c != spec.constants.c) {
    throw Error(ErrorKind::config, "spec and query use different physical constants");
  }
  const Complex v0 = spec.V0_effective();
  const Complex required = spec.constants.hbar_c() / (2.0 * kSqrt3 * spec.sigma);
  if (std::abs(v0 - required) > 1e-12 * std::abs(required)) {
    throw Error(ErrorKind::domain, "the explicit 1F1 solution requires V0 = hbar c/(2 sqrt(3) sigma)");
  }
  const CondSolutionParams p = cond_solution_params(spec, query, signs);
  const Complex b = 1.0 + 2.0 * p.alpha1;
  if (b.imag() == 0.0 && b.real() <= 0.0 && b.real() == std::round(b.real())) {
    throw PoleError("1F1 lower parameter 1 + 2 alpha1 is a nonpositive integer", b);
  }
  return CondWaveFunction(spec, query, p);
}

WitnessResult cond_heun_reduction_witness(const catalog::PotentialSpec& spec, const QuerySpec& query, double tol) {
  if (spec.family != catalog::FamilyId::from_row(5)) {
    throw Error(ErrorKind::config, "the witness runs on the (1, -1) family");
  }
  const auto polys = construct::polys(spec);
  WitnessResult best{};
  bool found = false;
  for (const auto& pf : construct::exponents(polys, spec.family, query)) {
    if (pf.signs[0] != Sign::plus || pf.signs[1] != Sign::plus) continue;
    if (std::abs(pf.a2 - 0.5) > 1e-6) continue;
    const auto h = construct::heun_params(pf, polys, spec.family, query);
    best.branch = pf.signs;
    best.heun = h;
    best.delta_abs = std::abs(h.delta);
    best.alpha_minus_q_abs = std::abs(h.alpha - h.q);
    found = true;
  }
  if (!found) throw Error(ErrorKind::witness_failure, "no branch with alpha2 = 1/2");
  if (!(best.delta_abs < tol && best.alpha_minus_q_abs < tol)) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "delta = 0 and alpha = q fail: |delta| = %.3g, |alpha - q| = %.3g",
                  best.delta_abs, best.alpha_minus_q_abs);
    throw Error(ErrorKind::witness_failure, buf);
  }
  best.reduction = construct::detect_reduction(best.heun, tol);
  return best;
}

WitnessResult cond_heun_reduction_witness(const CondSpec& spec, const QuerySpec& query, double tol) {
  return cond_heun_reduction_witness(spec.potential_spec(), query, tol);
}

std::vector<Fig2Row> fig2_data(const std::vector<double>& sigmas, const std::vector<double>& grid) {
  std::vector<Fig2Row> rows;
  for (double sigma : sigmas) {
    if (!(sigma > 0)) throw Error(ErrorKind::config, "sigma values must be positive");
    const CondSpec spec = CondSpec::single(sigma);
    for (double x : grid) {
      if (!(x > 0)) throw Error(ErrorKind::grid, "grid points must be positive");
      rows.push_back({sigma, x, cond_z(spec, x).real(), cond_potential_closed(spec, x)});
    }
  }
  return rows;
}

std::string fig2_csv(const std::vector<Fig2Row>& rows) {
  std::string out = "sigma,x,z,re_V,im_V\n";
  char buf[256];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", r.sigma, r.x, r.z, r.V.real(), r.V.imag() + 0.0);
    out += buf;
  }
  return out;
}

}  // namespace kgheun::conditional
