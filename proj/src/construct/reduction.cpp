#include <algorithm>
#include <cmath>

#include "kgheun/construct.hpp"

namespace kgheun::construct {

namespace {

const specfun::EvalConfig& cfg() {
  static const specfun::EvalConfig c = specfun::EvalConfig::precise();
  return c;
}

ReductionResult kummer(Complex a, Complex b, Complex scale, Complex shift) {
  ReductionResult r;
  r.kind = ReductionKind::kummer;
  r.a = a;
  r.b = b;
  r.scale = scale;
  r.shift = shift;
  return r;
}

}  // namespace

const char* to_string(ReductionKind kind) {
  switch (kind) {
    case ReductionKind::kummer: return "kummer";
    case ReductionKind::gauss: return "gauss";
    default: return "none";
  }
}

Complex ReductionResult::mapped(Complex z) const {
  switch (kind) {
    case ReductionKind::kummer: return normalization * specfun::kummer_1f1(a, b, scale * (z + shift), cfg());
    case ReductionKind::gauss: return normalization * specfun::gauss_2f1(a, b, c, z, cfg());
    default: throw Error(ErrorKind::config, "no reduction to evaluate");
  }
}

Complex ReductionResult::reference(const HeunParams& p, Complex z) const {
  if (mirrored) return normalization * specfun::heun_c(p.mirrored(), 1.0 - z, cfg());
  return specfun::heun_c(p, z, cfg());
}

ReductionResult detect_reduction(const HeunParams& p, double tol) {
  if (!(tol > 0)) throw Error(ErrorKind::config, "reduction tolerance must be positive");
  p.validate();
  const bool eps0 = std::abs(p.epsilon) < tol;
  if (eps0 && std::abs(p.alpha) < tol) {
    ReductionResult r;
    r.kind = ReductionKind::gauss;
    const Complex b = -(p.gamma + p.delta - 1.0);
    r.a = quadratic_root(b, -p.q, Sign::plus);
    r.b = quadratic_root(b, -p.q, Sign::minus);
    r.c = p.gamma;
    return r;
  }
  const bool kummer_delta = std::abs(p.delta) < tol && std::abs(p.q - p.alpha) < tol;
  const bool kummer_gamma = std::abs(p.gamma) < tol && std::abs(p.q) < tol;
  const bool trivial = std::abs(p.alpha) < tol && std::abs(p.q) < tol;
  if ((kummer_delta || kummer_gamma || trivial) && eps0) {
    throw Error(ErrorKind::degenerate, "Kummer reduction needs epsilon != 0");
  }
  if (kummer_delta) return kummer(p.alpha / p.epsilon, p.gamma, -p.epsilon, 0.0);
  if (kummer_gamma) {
    // Solution regular at z = 1, normalized to 1 at z = 0.
    ReductionResult r = kummer(p.alpha / p.epsilon, p.delta, -p.epsilon, -1.0);
    r.normalization = 1.0 / specfun::kummer_1f1(r.a, r.b, p.epsilon, cfg());
    r.mirrored = true;
    return r;
  }
  if (trivial) return kummer(0.0, p.gamma, -p.epsilon, 0.0);
  return {};
}

double reduction_agreement(const ReductionResult& r, const HeunParams& p, const std::vector<Complex>& zs) {
  double worst = 0.0;
  for (Complex z : zs) {
    const Complex ref = r.reference(p, z);
    worst = std::max(worst, std::abs(r.mapped(z) - ref) / std::max(1.0, std::abs(ref)));
  }
  return worst;
}

}  // namespace kgheun::construct
