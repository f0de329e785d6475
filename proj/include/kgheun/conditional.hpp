#pragma once

#include <array>
#include <string>
#include <vector>

#include "kgheun/construct.hpp"

namespace kgheun::conditional {

using construct::QuerySpec;
using construct::Sign;

/// The Lambert-W potential V0 + V1/(z-1) + V2/(z-1)^2 with the fixed strengths
/// V1 = -hbar c/(sqrt(3) sigma), V2 = -sqrt(3) hbar c/(2 sigma).
struct CondSpec {
  Complex V0;
  Complex x0;
  Complex sigma{1.0};
  catalog::PhysicalConstants constants;
  /// Imposes x0 = -sigma and V0 = hbar c/(2 sqrt(3) sigma).
  bool single_param = false;

  static CondSpec single(Complex sigma, catalog::PhysicalConstants constants = {});

  void validate() const;
  Complex V0_effective() const;
  Complex x0_effective() const;
  Complex V1() const;
  Complex V2() const;
  /// The family (1, -1) spec carrying these strengths (principal W branch).
  catalog::PotentialSpec potential_spec() const;
};

/// z(x) on the principal W branch; throws near the z = 1 endpoint.
Complex cond_z(const CondSpec& spec, double x);

/// V0 + V1/(z-1) + V2/(z-1)^2.
Complex cond_potential(const CondSpec& spec, double x);

/// V0 z (z - 4)/(z - 1)^2, valid for single_param specs.
Complex cond_potential_closed(const CondSpec& spec, double x);

using SignPair = std::array<Sign, 2>;

struct CondSolutionParams {
  Complex alpha1;
  Complex eps;
  Complex a;
  SignPair signs{Sign::plus, Sign::plus};
};

/// alpha1, eps and the 1F1 numerator parameter for the sign pair.
CondSolutionParams cond_solution_params(const CondSpec& spec, const QuerySpec& query, SignPair signs);

class CondWaveFunction {
 public:
  CondWaveFunction(CondSpec spec, QuerySpec query, CondSolutionParams params);

  Complex operator()(double x) const;
  Complex at_z(Complex z) const;
  Complex potential(double x) const { return cond_potential(spec_, x); }

  const CondSpec& spec() const { return spec_; }
  const QuerySpec& query() const { return query_; }
  const CondSolutionParams& params() const { return params_; }

 private:
  CondSpec spec_;
  QuerySpec query_;
  CondSolutionParams params_;
};

/// psi = z^alpha1 (1-z)^{1/2} e^{eps z/2} 1F1(a; 1 + 2 alpha1; -eps z). The
/// closed form holds only for V0 = hbar c/(2 sqrt(3) sigma); other V0 raise a
/// domain error.
CondWaveFunction cond_solution(const CondSpec& spec, const QuerySpec& query, SignPair signs);

/// Runs the construction pipeline on the family (1, -1) spec, picks the branch
/// with alpha2 = 1/2 and confirms delta = 0 and alpha = q. Throws
/// ErrorKind::witness_failure otherwise.
struct WitnessResult {
  construct::BranchTriple branch;
  construct::HeunParams heun;
  construct::ReductionResult reduction;
  double delta_abs;
  double alpha_minus_q_abs;
};
WitnessResult cond_heun_reduction_witness(const CondSpec& spec, const QuerySpec& query, double tol = 1e-9);
WitnessResult cond_heun_reduction_witness(const catalog::PotentialSpec& spec, const QuerySpec& query,
                                          double tol = 1e-9);

struct Fig2Row {
  double sigma;
  double x;
  double z;
  Complex V;
};

std::vector<Fig2Row> fig2_data(const std::vector<double>& sigmas, const std::vector<double>& grid);
std::string fig2_csv(const std::vector<Fig2Row>& rows);

}  // namespace kgheun::conditional
