#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "kgheun/specfun.hpp"

namespace kgheun::specfun {

namespace {

constexpr double kKeepOut = 1e-6;
constexpr int kMaxTaylorOrder = 400;

bool finite(Complex v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

// Index k >= 0 with gamma == -k, if gamma sits on a nonpositive integer.
std::optional<int> resonant_index(Complex gamma) {
  const double nearest = std::round(gamma.real());
  if (nearest > 0 || std::abs(gamma - nearest) > 1e-12 * std::max(1.0, std::abs(nearest))) {
    return std::nullopt;
  }
  return static_cast<int>(-nearest);
}

// Frobenius coefficients about z = 0 from
//   (n+1)(n+gamma) c_{n+1} = [n(n-1+gamma+delta-eps) - q] c_n + (eps(n-1) + alpha) c_{n-1}.
class FrobeniusRecurrence {
 public:
  explicit FrobeniusRecurrence(const HeunParams& p) : p_(p), resonance_(resonant_index(p.gamma)) {}

  // Advances to c_{n+1}; returns it.
  Complex next() {
    const double nd = n_;
    const Complex a = nd * (nd - 1.0 + p_.gamma + p_.delta - p_.epsilon) - p_.q;
    const Complex b = p_.epsilon * (nd - 1.0) + p_.alpha;
    const Complex rhs = a * cur_ + b * prev_;
    Complex next;
    if (resonance_ && *resonance_ == n_) {
      const double scale = std::abs(a * cur_) + std::abs(b * prev_);
      if (std::abs(rhs) > 1e-12 * scale && std::abs(rhs) > 1e-300) {
        std::ostringstream msg;
        msg << "gamma = " << -n_ << " gives a logarithmic second exponent at z = 0; "
            << "no solution analytic at the origin exists";
        throw Error(ErrorKind::degenerate, msg.str());
      }
      next = 0.0;
    } else {
      next = rhs / ((nd + 1.0) * (nd + p_.gamma));
    }
    prev_ = cur_;
    cur_ = next;
    ++n_;
    return next;
  }

  int index() const { return n_; }

 private:
  HeunParams p_;
  std::optional<int> resonance_;
  int n_ = 0;
  Complex prev_ = 0.0;
  Complex cur_ = 1.0;
};

struct SeriesResult {
  Complex value;
  Complex first;
  Complex second;
};

SeriesResult series(const HeunParams& p, Complex z, const EvalConfig& cfg, bool want_second) {
  FrobeniusRecurrence rec(p);
  SeriesResult out{1.0, 0.0, 0.0};
  const double r = std::abs(z);
  if (r == 0.0) {
    const Complex c1 = rec.next();
    const Complex c2 = rec.next();
    return {1.0, c1, 2.0 * c2};
  }
  const double tail_factor = 1.0 / (1.0 - std::min(r, 0.999));
  Complex zpow_m2 = 1.0 / (z * z);  // z^{n-2} for n = 0
  double last_mag = 0.0;
  double last_d1 = 0.0;
  double last_d2 = 0.0;
  for (int n = 1; n <= cfg.max_terms; ++n) {
    const Complex c = rec.next();
    zpow_m2 *= z;  // z^{n-2}
    const Complex t2 = c * zpow_m2;
    const Complex t1 = t2 * z;
    const Complex t0 = t1 * z;
    out.value += t0;
    out.first += static_cast<double>(n) * t1;
    if (want_second) out.second += static_cast<double>(n) * (n - 1) * t2;

    const double mag = std::abs(t0);
    const double d1 = n * std::abs(t1);
    const double d2 = double(n) * (n - 1) * std::abs(t2);
    const bool done0 = (mag + last_mag) * tail_factor <= cfg.abs_tol + cfg.rel_tol * std::abs(out.value);
    const double scale1 = std::abs(out.value) + std::abs(out.first);
    const bool done1 = (d1 + last_d1) * tail_factor * 2.0 <= cfg.abs_tol + cfg.rel_tol * scale1;
    const bool done2 = !want_second || (d2 + last_d2) * tail_factor * 4.0 <=
                                           cfg.abs_tol + cfg.rel_tol * (scale1 + std::abs(out.second));
    if (n >= 8 && done0 && done1 && done2) return out;
    last_mag = mag;
    last_d1 = d1;
    last_d2 = d2;
  }
  throw ConvergenceError("confluent Heun series did not converge within max_terms", out.value,
                         last_mag, cfg.max_terms);
}

double distance_to_segment(Complex point, Complex a, Complex b) {
  const Complex d = b - a;
  const double len2 = std::norm(d);
  double t = len2 == 0.0 ? 0.0 : ((point - a) * std::conj(d)).real() / len2;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(a + t * d - point);
}

// One Taylor step of the Heun equation about centre c, in polynomial form
//   P u'' + Q u' + R u = 0,  P = z(z-1),  Q = gamma(z-1) + delta z + eps z(z-1),  R = alpha z - q.
// Returns false when the local tail bound is not met within kMaxTaylorOrder.
bool taylor_step(const HeunParams& p, Complex c, Complex t, Complex& u, Complex& du,
                 const EvalConfig& cfg) {
  const Complex p0 = c * (c - 1.0);
  const Complex p1 = 2.0 * c - 1.0;
  const Complex q0 = p.gamma * (c - 1.0) + p.delta * c + p.epsilon * c * (c - 1.0);
  const Complex q1 = p.gamma + p.delta + p.epsilon * (2.0 * c - 1.0);
  const Complex q2 = p.epsilon;
  const Complex r0 = p.alpha * c - p.q;
  const Complex r1 = p.alpha;

  // a_{k-1}, a_k, a_{k+1} scaled by t^{index}: b_k = a_k t^k.
  Complex bm1 = 0.0;
  Complex b0 = u;
  Complex b1 = du * t;
  Complex value = b0 + b1;
  Complex deriv = b1;  // sum k b_k, divided by t at the end
  double last = std::abs(b1);
  for (int k = 0; k < kMaxTaylorOrder; ++k) {
    const double kd = k;
    // a_{k+2} p0 (k+2)(k+1) = -[(p1 k + q0)(k+1) a_{k+1} + (k(k-1) + q1 k + r0) a_k + (q2 (k-1) + r1) a_{k-1}]
    // In scaled form each a_j carries t^j, so multiply through by t^{k+2}.
    const Complex num = (p1 * kd + q0) * (kd + 1.0) * b1 * t +
                        (kd * (kd - 1.0) + q1 * kd + r0) * b0 * t * t +
                        (q2 * (kd - 1.0) + r1) * bm1 * t * t * t;
    const Complex b2 = -num / (p0 * (kd + 2.0) * (kd + 1.0));
    value += b2;
    deriv += (kd + 2.0) * b2;
    const double mag = std::abs(b2);
    const double bound = cfg.abs_tol + cfg.rel_tol * (std::abs(value) + std::abs(deriv));
    if (k >= 6 && (mag + last) * (kd + 3.0) <= bound) {
      u = value;
      du = deriv / t;
      return true;
    }
    last = mag;
    bm1 = b0;
    b0 = b1;
    b1 = b2;
  }
  return false;
}

// Continues (u, u') from z_start to z_end along the straight segment.
void continue_along(const HeunParams& p, Complex z_start, Complex z_end, Complex& u, Complex& du,
                    const EvalConfig& cfg) {
  Complex centre = z_start;
  double step_len = cfg.ode_step;
  while (true) {
    const Complex remaining = z_end - centre;
    const double rem = std::abs(remaining);
    if (rem == 0.0) return;
    const double dist = std::min(std::abs(centre), std::abs(centre - 1.0));
    if (dist < kKeepOut) throw Error(ErrorKind::singular_path, "continuation entered the keep-out radius");
    const double allowed = std::min(step_len, 0.5 * dist);
    const bool last = rem <= allowed;
    const Complex t = last ? remaining : remaining * (allowed / rem);
    Complex nu = u;
    Complex ndu = du;
    if (!taylor_step(p, centre, t, nu, ndu, cfg)) {
      step_len = 0.5 * std::abs(t);
      if (step_len < 1e-12) throw Error(ErrorKind::convergence, "continuation step size underflow");
      continue;
    }
    u = nu;
    du = ndu;
    if (last) return;
    centre += t;
    step_len = 2.0 * std::abs(t);
  }
}

struct Evaluated {
  Complex value;
  Complex first;
  std::optional<Complex> second;
};

Evaluated evaluate(const HeunParams& p, Complex z, const EvalConfig& cfg, bool want_second) {
  cfg.validate();
  p.validate();
  if (!finite(z)) throw Error(ErrorKind::domain, "non-finite argument");
  require_analytic_at_origin(p);
  const double r = std::abs(z);
  if (r <= cfg.continuation_radius) {
    const SeriesResult s = series(p, z, cfg, want_second);
    return {s.value, s.first, want_second ? std::optional<Complex>(s.second) : std::nullopt};
  }
  if (std::abs(z - 1.0) < kKeepOut || distance_to_segment(1.0, 0.0, z) < kKeepOut) {
    throw Error(ErrorKind::singular_path, "straight path from 0 passes through the singular point z = 1");
  }
  const Complex start = z * (cfg.continuation_radius / r);
  const SeriesResult s = series(p, start, cfg, false);
  Complex u = s.value;
  Complex du = s.first;
  continue_along(p, start, z, u, du, cfg);
  return {u, du, std::nullopt};
}

}  // namespace

void HeunParams::validate() const {
  if (!finite(gamma) || !finite(delta) || !finite(epsilon) || !finite(alpha) || !finite(q)) {
    throw Error(ErrorKind::config, "confluent Heun parameters must be finite");
  }
}

HeunParams HeunParams::mirrored() const { return {delta, gamma, -epsilon, -alpha, q - alpha}; }

void EvalConfig::validate() const {
  if (!(abs_tol > 0) || !(rel_tol > 0)) throw Error(ErrorKind::config, "tolerances must be positive");
  if (max_terms < 8) throw Error(ErrorKind::config, "max_terms must be at least 8");
  if (!(continuation_radius > 0 && continuation_radius < 1)) {
    throw Error(ErrorKind::config, "continuation_radius must lie in (0, 1)");
  }
  if (!(ode_step > 0)) throw Error(ErrorKind::config, "ode_step must be positive");
}

EvalConfig EvalConfig::precise() {
  EvalConfig cfg;
  cfg.abs_tol = 1e-300;
  cfg.rel_tol = std::numeric_limits<double>::epsilon() / 4;
  cfg.max_terms = 4000;
  return cfg;
}

void require_analytic_at_origin(const HeunParams& p) {
  const auto k = resonant_index(p.gamma);
  if (!k) return;
  FrobeniusRecurrence rec(p);
  while (rec.index() <= *k) rec.next();
}

Complex heun_c(const HeunParams& p, Complex z, const EvalConfig& cfg) {
  return evaluate(p, z, cfg, false).value;
}

HeunJet heun_c_jet(const HeunParams& p, Complex z, const EvalConfig& cfg) {
  const Evaluated e = evaluate(p, z, cfg, true);
  if (e.second) return {e.value, e.first, *e.second};
  // Outside the series disk: fourth-order central difference of u'.
  const Complex h = 1e-3 * (z / std::abs(z));
  auto d1 = [&](Complex at) { return evaluate(p, at, cfg, false).first; };
  const Complex second = (-d1(z + 2.0 * h) + 8.0 * d1(z + h) - 8.0 * d1(z - h) + d1(z - 2.0 * h)) / (12.0 * h);
  return {e.value, e.first, second};
}

}  // namespace kgheun::specfun
