#include <doctest.h>

#include <cmath>
#include <sstream>

#include "kgheun/conditional.hpp"
#include "kgheun/verify.hpp"

using namespace kgheun;
using namespace kgheun::conditional;
using construct::Sign;

namespace {

const double s3 = std::sqrt(3.0);

QuerySpec query(double E) {
  QuerySpec q;
  q.E = E;
  return q;
}

// z on the principal branch solved directly from x - x0 = sigma (z - log z) by bisection.
double z_bisect(double s) {
  double lo = 1e-300, hi = 1.0;
  for (int k = 0; k < 200; ++k) {
    const double mid = 0.5 * (lo + hi);
    if (mid - std::log(mid) > s) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("fixed strengths and the single-parameter setting") {
  const auto c = CondSpec::single(2.0);
  CHECK(c.x0_effective() == Complex(-2.0));
  CHECK(std::abs(c.V0_effective() - 1.0 / (2.0 * s3 * 2.0)) < 1e-16);
  CHECK(std::abs(c.V1() + 1.0 / (s3 * 2.0)) < 1e-16);
  CHECK(std::abs(c.V2() + s3 / (2.0 * 2.0)) < 1e-16);
  const auto ps = c.potential_spec();
  CHECK(ps.family == catalog::FamilyId::from_twice(2, -2));
  CHECK(ps.V1 == c.V1());
  CondSpec bad;
  bad.sigma = 0.0;
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("coordinate on the principal branch") {
  const auto c = CondSpec::single(1.0);
  for (double x : {1e-3, 0.1, 1.0, 5.0, 20.0}) CHECK(std::abs(cond_z(c, x).real() - z_bisect(x + 1.0)) < 1e-12);
  double prev = 1.0;
  for (double x = 0.05; x < 10.0; x += 0.05) {
    const double z = cond_z(c, x).real();
    CHECK(z < prev);
    CHECK(z > 0.0);
    prev = z;
  }
  try {
    cond_z(c, 0.0);
    FAIL("expected a pole");
  } catch (const PoleError& e) {
    CHECK(e.kind() == ErrorKind::pole);
  }
}

TEST_CASE("the two forms of the potential agree") {
  for (double sigma : {1.0, 3.0}) {
    const auto c = CondSpec::single(sigma);
    for (double t = 0.01; t <= 20.0; t *= 1.2) {
      const double x = t * sigma;
      const Complex a = cond_potential(c, x), b = cond_potential_closed(c, x);
      CHECK(std::abs(a - b) <= 1e-13 * std::max(1.0, std::abs(a)));
    }
  }
}

TEST_CASE("asymptotics") {
  const auto c = CondSpec::single(1.0);
  const double xb = 1e-4;
  CHECK(std::abs((xb * cond_potential(c, xb)).real() / (-s3 / 4.0) - 1.0) < 1e-3);
  // Tail constant: z ~ e^{-1 - x/sigma}, so V e^{x/sigma} -> 4 V0 (-e^{-1}) = -(2/sqrt3) e^{-1}.
  const double tail = -2.0 / s3 * std::exp(-1.0);
  CHECK(tail == doctest::Approx(-0.4247905887793227).epsilon(1e-14));
  CHECK(std::abs((cond_potential(c, 25.0) * std::exp(25.0)).real() / tail - 1.0) < 1e-3);
  // Far out V0 + V1/(z-1) + V2/(z-1)^2 cancels to rounding; the factored form keeps full accuracy.
  CHECK(std::abs((cond_potential_closed(c, 40.0) * std::exp(40.0)).real() / tail - 1.0) < 1e-12);
}

TEST_CASE("strengths scale as 1/sigma") {
  for (double lambda : {2.0, 5.0}) {
    const auto a = CondSpec::single(1.0), b = CondSpec::single(lambda);
    for (double x : {0.05, 0.5, 2.0, 7.0}) {
      const Complex va = cond_potential(a, x) - a.V0_effective();
      const Complex vb = cond_potential(b, lambda * x) - b.V0_effective();
      CHECK(std::abs(va - lambda * vb) < 1e-13 * std::abs(va));
    }
  }
}

TEST_CASE("solution parameters") {
  const auto c = CondSpec::single(1.0);
  const auto p = cond_solution_params(c, query(0.6), {Sign::plus, Sign::plus});
  CHECK(std::abs(p.alpha1 - 0.8) < 1e-15);
  const double v0 = 1.0 / (2.0 * s3);
  CHECK(std::abs(p.eps - 2.0 * std::sqrt(1.0 - (0.6 - v0) * (0.6 - v0))) < 1e-15);
  const auto m = cond_solution_params(c, query(0.6), {Sign::minus, Sign::minus});
  CHECK(std::abs(m.alpha1 + 0.8) < 1e-15);
  CHECK(std::abs(m.eps + p.eps) < 1e-15);
}

TEST_CASE("explicit solutions satisfy the Klein-Gordon equation") {
  const auto c = CondSpec::single(1.0);
  for (double E : {0.3, 0.6, 0.9}) {
    for (Sign s0 : {Sign::plus, Sign::minus}) {
      for (Sign s1 : {Sign::plus, Sign::minus}) {
        const auto wf = cond_solution(c, query(E), {s0, s1});
        const auto r = verify::kg_residual(wf, verify::Grid::linear(0.2, 5.0, 50, 1e-3), 1e-6);
        CHECK(r.pass);
      }
    }
  }
}

TEST_CASE("the four sign choices give independent solutions") {
  const auto c = CondSpec::single(1.0);
  const auto q = query(0.6);
  const auto a = cond_solution(c, q, {Sign::plus, Sign::plus});
  const auto b = cond_solution(c, q, {Sign::minus, Sign::plus});
  const Complex det = a(0.5) * b(2.0) - a(2.0) * b(0.5);
  CHECK(std::abs(det) > 1e-3 * std::abs(a(0.5) * b(2.0)));
}

TEST_CASE("closed form requires the locked V0") {
  CondSpec c = CondSpec::single(1.0);
  c.single_param = false;
  c.x0 = -1.0;
  c.V0 = 0.2;
  try {
    cond_solution(c, query(0.5), {Sign::plus, Sign::plus});
    FAIL("expected a domain error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::domain);
  }
}

TEST_CASE("reduction witness") {
  CondSpec c;
  c.V0 = 0.2;
  c.x0 = 0.0;
  c.sigma = 1.0;
  const auto w = cond_heun_reduction_witness(c, query(0.5));
  CHECK(w.delta_abs < 1e-9);
  CHECK(w.alpha_minus_q_abs < 1e-9);
  CHECK(w.reduction.kind == construct::ReductionKind::kummer);
  CHECK(std::abs(w.heun.delta) < 1e-9);

  // Flipping the sign of sigma flips the strengths with it; the witness still holds.
  const auto flipped = cond_heun_reduction_witness(CondSpec::single(-1.0), query(0.5));
  CHECK(flipped.delta_abs < 1e-9);
  CHECK(flipped.alpha_minus_q_abs < 1e-9);

  const auto generic = catalog::PotentialSpec::make(catalog::FamilyId::from_twice(2, -2), 0.1, 0.2, 0.3);
  try {
    cond_heun_reduction_witness(generic, query(0.5));
    FAIL("expected a witness failure");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::witness_failure);
  }
}

TEST_CASE("figure data") {
  const std::vector<double> grid{1e-4, 0.5, 1.0, 5.0, 30.0};
  const auto rows = fig2_data({1.0, 3.0, 10.0}, grid);
  CHECK(rows.size() == 15);
  for (const auto& r : rows) {
    CHECK(r.z > 0.0);
    CHECK(r.z < 1.0);
    CHECK(r.V.real() < 0.0);
  }
  CHECK(std::abs(rows[0].x * rows[0].V.real() + s3 / 4.0) < 1e-3);
  CHECK(std::abs(rows[4].V) < 1e-12);
  const std::string csv = fig2_csv(rows);
  std::istringstream in(csv);
  std::string header;
  std::getline(in, header);
  CHECK(header == "sigma,x,z,re_V,im_V");
  CHECK(csv == fig2_csv(fig2_data({1.0, 3.0, 10.0}, grid)));
  CHECK_THROWS_AS(fig2_data({-1.0}, grid), Error);
  CHECK_THROWS_AS(fig2_data({1.0}, {-0.5}), Error);
}
