#pragma once

#include "kgheun/errors.hpp"

namespace kgheun::specfun {

/// Parameters of the confluent Heun equation
///   u'' + (gamma/z + delta/(z-1) + epsilon) u' + (alpha z - q)/(z(z-1)) u = 0.
struct HeunParams {
  Complex gamma;
  Complex delta;
  Complex epsilon;
  Complex alpha;
  Complex q;

  /// Throws ErrorKind::config when any entry is not finite.
  void validate() const;

  /// Parameters of the same equation written in the variable 1 - z.
  HeunParams mirrored() const;
};

struct EvalConfig {
  double abs_tol = 1e-14;
  double rel_tol = 1e-12;
  int max_terms = 2000;
  double continuation_radius = 0.5;
  /// Initial step of the adaptive continuation integrator.
  double ode_step = 1e-3;

  void validate() const;

  /// Tolerances at the double-precision floor. Used wherever values are fed
  /// into finite differences, where a 1e-12 truncation jitter would be
  /// amplified by 1/h^2.
  static EvalConfig precise();
};

/// Local Frobenius solution of the confluent Heun equation about z = 0 with
/// u(0) = 1. Inside continuation_radius the power series is summed directly;
/// beyond it the equation is integrated along the straight ray from the
/// series circle with an adaptive Taylor-series method.
///
/// When gamma = -k is a nonpositive integer the recurrence is resonant at
/// n = k. If the resonance condition holds the free coefficient is set to 0
/// and the analytic solution is returned; otherwise ErrorKind::degenerate.
Complex heun_c(const HeunParams& p, Complex z, const EvalConfig& cfg = {});

/// Value and first two z-derivatives of heun_c. The second derivative comes
/// from term-wise differentiation inside the series disk and from a central
/// difference of the first derivative outside it.
struct HeunJet {
  Complex value;
  Complex first;
  Complex second;
};
HeunJet heun_c_jet(const HeunParams& p, Complex z, const EvalConfig& cfg = {});

/// Throws ErrorKind::degenerate when no solution analytic at z = 0 exists
/// (nonpositive integer gamma with a logarithmic resonance).
void require_analytic_at_origin(const HeunParams& p);

/// Kummer 1F1(a; b; z) by its Taylor series.
Complex kummer_1f1(Complex a, Complex b, Complex z, const EvalConfig& cfg = {});

/// Gauss 2F1(a, b; c; z). Series for |z| <= 0.75, Pfaff transformation for
/// real z < 0, plain series up to the unit circle otherwise.
Complex gauss_2f1(Complex a, Complex b, Complex c, Complex z, const EvalConfig& cfg = {});

enum class WBranch { principal, lower };

/// Real Lambert W on the principal (w >= -1) or lower (w <= -1) branch.
double lambert_w(WBranch branch, double x);

}  // namespace kgheun::specfun
