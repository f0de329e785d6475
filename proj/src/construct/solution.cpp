#include <cmath>

#include "kgheun/construct.hpp"
#include "kgheun/powers.hpp"

namespace kgheun::construct {

WaveFunction::WaveFunction(PotentialSpec spec, QuerySpec query, Prefactor prefactor, HeunParams heun)
    : spec_(std::move(spec)),
      query_(query),
      prefactor_(prefactor),
      heun_(heun),
      cfg_(specfun::EvalConfig::precise()) {
  spec_.validate();
  query_.validate();
  heun_.validate();
}

Complex WaveFunction::at_z(Complex z) const {
  if (std::abs(z) <= 1e-14 || std::abs(z - 1.0) <= 1e-14) {
    throw Error(ErrorKind::singular_point, "wave function evaluated at a singular point z in {0, 1}");
  }
  const Prefactor& p = prefactor_;
  return std::exp(p.a0 * z) * pow_z(z, p.a1) * pow_zm1(z, p.a2) * specfun::heun_c(heun_, z, cfg_);
}

Complex WaveFunction::operator()(Complex x) const { return at_z(catalog::map_x_to_z(spec_, x)); }

Complex WaveFunction::potential(Complex x) const { return catalog::potential_value(spec_, x); }

WaveFunction build_solution(const PotentialSpec& spec, const QuerySpec& query, const BranchTriple& branch) {
  const RVWPolys p = polys(spec);
  const Prefactor pf = exponents_for(p, spec.family, query, branch);
  const HeunParams h = heun_params(pf, p, spec.family, query);
  try {
    specfun::require_analytic_at_origin(h);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::degenerate) throw;
    throw Error(ErrorKind::degenerate,
                e.detail() + " (branch " + branch_string(branch) +
                    "); choose the other alpha1 root or build the mirrored family, which expands about z = 1");
  }
  return WaveFunction(spec, query, pf, h);
}

}  // namespace kgheun::construct
