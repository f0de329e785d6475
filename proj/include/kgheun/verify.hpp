#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "kgheun/conditional.hpp"
#include "kgheun/construct.hpp"

namespace kgheun::verify {

using construct::QuerySpec;
using specfun::HeunParams;

/// Abscissae with the finite-difference step to use at each of them. Steps
/// may be complex: along a complex path the step follows its tangent.
struct Grid {
  std::vector<Complex> points;
  std::vector<Complex> steps;

  static Grid linear(double start, double stop, int count, double h);
  static Grid logarithmic(double start, double stop, int count, double h);
  /// Points x(z_k) for z_k evenly spaced in [z_lo, z_hi]; each step is
  /// h |sigma| along dx/dz = 1/rho.
  static Grid from_z(const catalog::PotentialSpec& spec, double z_lo, double z_hi, int count, double h = 1e-3);

  void validate() const;
  std::size_t size() const { return points.size(); }
};

struct PointResidual {
  Complex at;
  double abs_residual;
  double rel_residual;
};

struct ResidualReport {
  double max_abs_residual = 0.0;
  double max_rel_residual = 0.0;
  double tol = 0.0;
  bool pass = false;
  std::vector<PointResidual> points;
};

using Field = std::function<Complex(Complex)>;

/// psi'' + ((E - V)^2 - m^2 c^4)/(hbar c)^2 psi by fourth-order central
/// differences, normalized pointwise by the largest of the three terms.
ResidualReport kg_residual(const Field& psi, const Field& potential, const QuerySpec& query, const Grid& grid,
                           double tol);
ResidualReport kg_residual(const construct::WaveFunction& psi, const Grid& grid, double tol);
ResidualReport kg_residual(const conditional::CondWaveFunction& psi, const Grid& grid, double tol);

/// Residual of the confluent Heun equation with equation_params, evaluated on
/// heun_c of solution_params (defaults to the same parameters).
ResidualReport heun_ode_residual(const HeunParams& equation_params, const std::vector<Complex>& zs, double tol,
                                 const std::optional<HeunParams>& solution_params = std::nullopt);

struct Jet {
  Complex value;
  Complex first;
};
using JetFn = std::function<Jet(Complex)>;

struct WronskianReport {
  double deviation = 0.0;
  bool dependent = false;
  double tol = 0.0;
  bool pass = false;
};

/// Abel-weighted Wronskian W e^{eps z} z^gamma (z-1)^delta; its max relative
/// deviation from the grid median.
WronskianReport wronskian_check(const JetFn& ua, const JetFn& ub, const HeunParams& p, const std::vector<Complex>& zs,
                                double tol);

/// Heun-factor jets of two branches of one construction, expressed as
/// solutions of a's Heun equation: u_B = (phi_B/phi_A) H_C(p_B).
std::pair<JetFn, JetFn> branch_jets(const construct::WaveFunction& a, const construct::WaveFunction& b);

struct TransformReport {
  double max_roundtrip = 0.0;
  double max_derivative = 0.0;
  double roundtrip_tol = 1e-10;
  double derivative_tol = 1e-7;
  bool pass = false;
};

/// |x(z(x)) - x| and relative |dz/dx - rho| on a real x grid.
TransformReport transform_consistency(const catalog::PotentialSpec& spec, const std::vector<double>& xs,
                                      double derivative_tol = 1e-7, double roundtrip_tol = 1e-10);

/// Evenly spaced points x0 + sigma s inside the family's real domain.
std::vector<double> domain_grid(const catalog::PotentialSpec& spec, int count);

}  // namespace kgheun::verify
