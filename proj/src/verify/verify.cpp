#include "kgheun/verify.hpp"

#include <algorithm>
#include <cmath>

#include "kgheun/powers.hpp"

namespace kgheun::verify {

namespace {

constexpr std::size_t kMinPoints = 9;

ResidualReport finish(ResidualReport r, double tol) {
  r.tol = tol;
  for (const auto& p : r.points) {
    r.max_abs_residual = std::max(r.max_abs_residual, p.abs_residual);
    r.max_rel_residual = std::max(r.max_rel_residual, p.rel_residual);
  }
  r.pass = r.max_rel_residual < tol;
  return r;
}

template <typename F>
Complex second_difference(F f, Complex x, Complex h, Complex centre) {
  return (-f(x + 2.0 * h) + 16.0 * f(x + h) - 30.0 * centre + 16.0 * f(x - h) - f(x - 2.0 * h)) / (12.0 * h * h);
}

template <typename F>
Complex first_difference(F f, Complex x, Complex h) {
  return (-f(x + 2.0 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) + f(x - 2.0 * h)) / (12.0 * h);
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

}  // namespace

Grid Grid::linear(double start, double stop, int count, double h) {
  if (count < 2) throw Error(ErrorKind::grid, "grid needs at least two points");
  Grid g;
  for (int k = 0; k < count; ++k) {
    g.points.emplace_back(start + (stop - start) * k / (count - 1));
    g.steps.emplace_back(h);
  }
  return g;
}

Grid Grid::logarithmic(double start, double stop, int count, double h) {
  if (count < 2) throw Error(ErrorKind::grid, "grid needs at least two points");
  if (!(start > 0 && stop > 0)) throw Error(ErrorKind::grid, "log grid needs positive end points");
  Grid g;
  const double a = std::log(start), b = std::log(stop);
  for (int k = 0; k < count; ++k) {
    g.points.emplace_back(std::exp(a + (b - a) * k / (count - 1)));
    g.steps.emplace_back(h);
  }
  return g;
}

Grid Grid::from_z(const catalog::PotentialSpec& spec, double z_lo, double z_hi, int count, double h) {
  if (count < 2) throw Error(ErrorKind::grid, "grid needs at least two points");
  Grid g;
  const double len = h * std::abs(spec.sigma);
  for (int k = 0; k < count; ++k) {
    const Complex z = z_lo + (z_hi - z_lo) * k / (count - 1);
    const Complex dxdz = 1.0 / catalog::rho(spec, z);
    g.points.push_back(catalog::map_z_to_x(spec, z));
    g.steps.push_back(len * dxdz / std::abs(dxdz));
  }
  return g;
}

void Grid::validate() const {
  if (points.size() < kMinPoints) throw Error(ErrorKind::grid, "grid too coarse for the 5-point stencil (need >= 9 points)");
  if (steps.size() != points.size()) throw Error(ErrorKind::grid, "grid steps and points differ in length");
  for (Complex h : steps) {
    if (h == Complex(0.0)) throw Error(ErrorKind::grid, "zero finite-difference step");
  }
}

ResidualReport kg_residual(const Field& psi, const Field& potential, const QuerySpec& query, const Grid& grid,
                           double tol) {
  grid.validate();
  query.validate();
  const double hc2 = query.constants.hbar_c() * query.constants.hbar_c();
  const double mc2 = query.mc2();
  ResidualReport r;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const Complex x = grid.points[k];
    const Complex centre = psi(x);
    const Complex d2 = second_difference(psi, x, grid.steps[k], centre);
    const Complex ev = query.E - potential(x);
    const Complex t_kin = ev * ev * centre / hc2;
    const Complex t_mass = mc2 * mc2 * centre / hc2;
    const double abs_res = std::abs(d2 + t_kin - t_mass);
    const double scale = std::max({std::abs(d2), std::abs(t_kin), std::abs(t_mass)});
    r.points.push_back({x, abs_res, scale > 0 ? abs_res / scale : abs_res});
  }
  return finish(std::move(r), tol);
}

ResidualReport kg_residual(const construct::WaveFunction& psi, const Grid& grid, double tol) {
  return kg_residual([&](Complex x) { return psi(x); }, [&](Complex x) { return psi.potential(x); }, psi.query(),
                     grid, tol);
}

ResidualReport kg_residual(const conditional::CondWaveFunction& psi, const Grid& grid, double tol) {
  for (Complex x : grid.points) {
    if (x.imag() != 0.0) throw Error(ErrorKind::grid, "the conditional solution is evaluated on real x");
  }
  auto real_x = [](Complex x) { return x.real(); };
  return kg_residual([&](Complex x) { return psi(real_x(x)); }, [&](Complex x) { return psi.potential(real_x(x)); },
                     psi.query(), grid, tol);
}

ResidualReport heun_ode_residual(const HeunParams& p, const std::vector<Complex>& zs, double tol,
                                 const std::optional<HeunParams>& solution_params) {
  const HeunParams& sp = solution_params ? *solution_params : p;
  const auto cfg = specfun::EvalConfig::precise();
  ResidualReport r;
  for (Complex z : zs) {
    if (std::abs(z) < 1e-3 || std::abs(z - 1.0) < 1e-3) {
      throw Error(ErrorKind::grid, "Heun residual grid must avoid z = 0 and z = 1");
    }
    const auto jet = specfun::heun_c_jet(sp, z, cfg);
    const Complex t1 = (p.gamma / z + p.delta / (z - 1.0) + p.epsilon) * jet.first;
    const Complex t0 = (p.alpha * z - p.q) / (z * (z - 1.0)) * jet.value;
    const double abs_res = std::abs(jet.second + t1 + t0);
    const double scale = std::max({std::abs(jet.second), std::abs(t1), std::abs(t0), std::abs(jet.value)});
    r.points.push_back({z, abs_res, abs_res / scale});
  }
  return finish(std::move(r), tol);
}

WronskianReport wronskian_check(const JetFn& ua, const JetFn& ub, const HeunParams& p, const std::vector<Complex>& zs,
                                double tol) {
  if (zs.size() < 2) throw Error(ErrorKind::grid, "Wronskian check needs at least two points");
  std::vector<Complex> values;
  double size_scale = 0.0;
  for (Complex z : zs) {
    const Jet a = ua(z);
    const Jet b = ub(z);
    const Complex w = a.value * b.first - a.first * b.value;
    size_scale = std::max(size_scale, std::abs(a.value * b.first) + std::abs(a.first * b.value));
    values.push_back(w * std::exp(p.epsilon * z) * pow_z(z, p.gamma) * pow_zm1(z, p.delta));
  }
  WronskianReport r;
  r.tol = tol;
  std::vector<double> re, im;
  for (Complex v : values) {
    re.push_back(v.real());
    im.push_back(v.imag());
  }
  const Complex med(median(re), median(im));
  double max_raw = 0.0;
  for (std::size_t k = 0; k < zs.size(); ++k) {
    const Jet a = ua(zs[k]);
    const Jet b = ub(zs[k]);
    max_raw = std::max(max_raw, std::abs(a.value * b.first - a.first * b.value));
  }
  if (max_raw <= 1e-10 * size_scale) {
    r.dependent = true;
    r.deviation = std::numeric_limits<double>::quiet_NaN();
    r.pass = false;
    return r;
  }
  for (Complex v : values) r.deviation = std::max(r.deviation, std::abs(v - med) / std::abs(med));
  r.pass = r.deviation < tol;
  return r;
}

std::pair<JetFn, JetFn> branch_jets(const construct::WaveFunction& a, const construct::WaveFunction& b) {
  const auto cfg = specfun::EvalConfig::precise();
  const Complex d0 = b.prefactor().a0 - a.prefactor().a0;
  const Complex d1 = b.prefactor().a1 - a.prefactor().a1;
  const Complex d2 = b.prefactor().a2 - a.prefactor().a2;
  const HeunParams pa = a.heun();
  const HeunParams pb = b.heun();
  JetFn ja = [pa, cfg](Complex z) {
    const auto j = specfun::heun_c_jet(pa, z, cfg);
    return Jet{j.value, j.first};
  };
  JetFn jb = [pb, cfg, d0, d1, d2](Complex z) {
    const auto j = specfun::heun_c_jet(pb, z, cfg);
    const Complex ratio = std::exp(d0 * z) * pow_z(z, d1) * pow_zm1(z, d2);
    const Complex log_d = d0 + d1 / z + d2 / (z - 1.0);
    return Jet{ratio * j.value, ratio * (log_d * j.value + j.first)};
  };
  return {ja, jb};
}

TransformReport transform_consistency(const catalog::PotentialSpec& spec, const std::vector<double>& xs,
                                      double derivative_tol, double roundtrip_tol) {
  TransformReport r;
  r.derivative_tol = derivative_tol;
  r.roundtrip_tol = roundtrip_tol;
  const Complex h = 1e-3 * std::abs(spec.sigma);
  auto zmap = [&](Complex x) { return catalog::map_x_to_z(spec, x); };
  for (double x : xs) {
    const Complex z = zmap(x);
    r.max_roundtrip = std::max(r.max_roundtrip, std::abs(catalog::map_z_to_x(spec, z) - x));
    const Complex dz = first_difference(zmap, x, h);
    const Complex rho = catalog::rho(spec, z);
    r.max_derivative = std::max(r.max_derivative, std::abs(dz - rho) / std::abs(rho));
  }
  r.pass = r.max_roundtrip < roundtrip_tol && r.max_derivative < derivative_tol;
  return r;
}

std::vector<double> domain_grid(const catalog::PotentialSpec& spec, int count) {
  double lo = -3.0, hi = 3.0;
  switch (catalog::mirror(spec.family).canonical.row()) {
    case 2:
    case 3:
    case 4:
    case 6: lo = 0.1; hi = 5.0; break;
    case 5: lo = 1.05; hi = 6.0; break;
    case 8: lo = 0.1; hi = 2.8; break;
    case 9: lo = -5.0; hi = 5.0; break;
    default: break;
  }
  const Complex sigma_c = spec.sigma * catalog::mirror(spec.family).transform.sigma_factor;
  if (!spec.real_coordinates() || sigma_c.imag() != 0.0) {
    throw Error(ErrorKind::domain, "real domain grid needs a real canonical length scale");
  }
  const double sigma = sigma_c.real();
  std::vector<double> xs;
  for (int k = 0; k < count; ++k) xs.push_back(spec.x0.real() + sigma * (lo + (hi - lo) * k / (count - 1)));
  return xs;
}

}  // namespace kgheun::verify
