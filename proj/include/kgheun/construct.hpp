#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "kgheun/catalog.hpp"
#include "kgheun/specfun.hpp"

namespace kgheun::construct {

using catalog::FamilyId;
using catalog::PhysicalConstants;
using catalog::PotentialSpec;
using specfun::HeunParams;

struct QuerySpec {
  Complex E{0.5};
  double mass = 1.0;
  PhysicalConstants constants;

  void validate() const;
  double mc2() const { return mass * constants.c * constants.c; }
};

/// Coefficients c0..c4 of r(z), v(z) = r V and w(z) = r V^2.
struct RVWPolys {
  std::array<Complex, 5> r{};
  std::array<Complex, 5> v{};
  std::array<Complex, 5> w{};
};

/// Expands the family's potential terms against r(z). Throws
/// ErrorKind::structural when a term leaves a negative power behind.
RVWPolys polys(const PotentialSpec& spec);
RVWPolys polys_from_terms(FamilyId family, Complex sigma, const std::vector<catalog::PotentialTerm>& terms);

Complex poly_eval(const std::array<Complex, 5>& c, Complex z);

enum class Sign { plus, minus };

/// Signs for (alpha0, alpha1, alpha2); written as e.g. "+-+".
using BranchTriple = std::array<Sign, 3>;
BranchTriple parse_branch(const std::string& text);
std::string branch_string(const BranchTriple& b);

struct Prefactor {
  Complex a0;
  Complex a1;
  Complex a2;
  BranchTriple signs{Sign::plus, Sign::plus, Sign::plus};
  std::array<bool, 3> double_root{false, false, false};
};

/// The three exponent quadratics t^2 + b t + c = 0, as (b, c) pairs.
struct ExponentQuadratics {
  std::array<Complex, 3> b;
  std::array<Complex, 3> c;
  /// Residual of each exponent of pf, relative to the size of its terms.
  std::array<double, 3> residuals(const Prefactor& pf) const;
};
ExponentQuadratics exponent_quadratics(const RVWPolys& p, FamilyId family, const QuerySpec& query);

/// Root of one quadratic for the given sign: "+" takes (-b + sqrt(D))/2 with the
/// principal square root.
Complex quadratic_root(Complex b, Complex c, Sign sign, bool* double_root = nullptr);

/// Every distinct sign combination; a double root contributes one entry.
std::vector<Prefactor> exponents(const RVWPolys& p, FamilyId family, const QuerySpec& query);
Prefactor exponents_for(const RVWPolys& p, FamilyId family, const QuerySpec& query, const BranchTriple& branch);

HeunParams heun_params(const Prefactor& pf, const RVWPolys& p, FamilyId family, const QuerySpec& query);

struct MatchResult {
  Prefactor prefactor;
  HeunParams heun;
  double residual;
  int iterations;
};

/// Solves the eight matching equations for (alpha0..2, gamma, delta, epsilon,
/// alpha, q) by Gauss-Newton on samples of the two rational identities,
/// starting from pf_seed. Uses V and rho from the catalog, not the polys.
MatchResult match_coefficients(const PotentialSpec& spec, const QuerySpec& query, const Prefactor& pf_seed);

/// Residual vector norm of the matching equations at a candidate point.
double matching_residual(const PotentialSpec& spec, const QuerySpec& query, const Prefactor& pf,
                         const HeunParams& heun);

class WaveFunction {
 public:
  WaveFunction(PotentialSpec spec, QuerySpec query, Prefactor prefactor, HeunParams heun);

  Complex operator()(Complex x) const;
  Complex at_z(Complex z) const;
  Complex potential(Complex x) const;

  const PotentialSpec& spec() const { return spec_; }
  const QuerySpec& query() const { return query_; }
  const Prefactor& prefactor() const { return prefactor_; }
  const HeunParams& heun() const { return heun_; }

 private:
  PotentialSpec spec_;
  QuerySpec query_;
  Prefactor prefactor_;
  HeunParams heun_;
  specfun::EvalConfig cfg_;
};

WaveFunction build_solution(const PotentialSpec& spec, const QuerySpec& query, const BranchTriple& branch);

enum class ReductionKind { none, kummer, gauss };
const char* to_string(ReductionKind kind);

/// kummer: normalization * 1F1(a; b; scale * (z + shift)).
/// gauss:  normalization * 2F1(a, b; c; z).
/// When mirrored is set the mapped function is the solution regular at z = 1,
/// compared against heun_c of the mirrored parameters at 1 - z.
struct ReductionResult {
  ReductionKind kind = ReductionKind::none;
  Complex a;
  Complex b;
  Complex c;
  Complex scale;
  Complex shift;
  Complex normalization{1.0};
  bool mirrored = false;

  Complex mapped(Complex z) const;
  /// heun_c counterpart of mapped(z), including the normalization.
  Complex reference(const HeunParams& p, Complex z) const;
};

ReductionResult detect_reduction(const HeunParams& p, double tol = 1e-10);

/// Max |mapped - reference| / max(1, |reference|) over the z points.
double reduction_agreement(const ReductionResult& r, const HeunParams& p, const std::vector<Complex>& zs);

}  // namespace kgheun::construct
