#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "kgheun/construct.hpp"

namespace kgheun::construct {

namespace {

constexpr int kSamples = 9;
constexpr int kUnknowns = 8;
constexpr int kMaxIterations = 200;

using Vec = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;
using Mat = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;

// Unknown order: alpha0, alpha1, alpha2, gamma, delta, epsilon, alpha, q.
struct Sample {
  Complex z;
  Complex M;     // rho_z / rho
  Complex K;     // ((E - V)^2 - m^2 c^4) / ((hbar c)^2 rho^2)
};

std::vector<Sample> samples(const PotentialSpec& spec, const QuerySpec& query) {
  std::vector<Sample> out;
  const double hc = query.constants.hbar_c();
  const double m1 = spec.family.m1.value();
  const double m2 = spec.family.m2.value();
  for (int k = 0; k < kSamples; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / kSamples + 0.3;
    const Complex z = 0.5 + 0.9 * std::polar(1.0, theta);
    const Complex V = catalog::potential_of_z(spec, z);
    const Complex rho = catalog::rho(spec, z);
    const Complex ev = query.E - V;
    const Complex K = (ev * ev - query.mc2() * query.mc2()) / (hc * hc * rho * rho);
    out.push_back({z, m1 / z + m2 / (z - 1.0), K});
  }
  return out;
}

void residual_and_jacobian(const std::vector<Sample>& ss, const Vec& x, Vec& R, Mat* J) {
  R.resize(2 * kSamples);
  if (J) J->setZero(2 * kSamples, kUnknowns);
  for (int k = 0; k < kSamples; ++k) {
    const Complex z = ss[k].z;
    const Complex zm1 = z - 1.0;
    const Complex M = ss[k].M;
    const Complex L = x[0] + x[1] / z + x[2] / zm1;
    const Complex dL = -x[1] / (z * z) - x[2] / (zm1 * zm1);
    const Complex zz = z * zm1;
    const Complex G = zz * zz;
    R[2 * k] = zz * (x[3] / z + x[4] / zm1 + x[5] - 2.0 * L - M);
    R[2 * k + 1] = G * (dL + L * L + M * L + ss[k].K) - (x[6] * z - x[7]) * zz;
    if (!J) continue;
    auto& j = *J;
    j(2 * k, 0) = -2.0 * zz;
    j(2 * k, 1) = -2.0 * zm1;
    j(2 * k, 2) = -2.0 * z;
    j(2 * k, 3) = zm1;
    j(2 * k, 4) = z;
    j(2 * k, 5) = zz;
    const Complex w = 2.0 * L + M;
    j(2 * k + 1, 0) = G * w;
    j(2 * k + 1, 1) = G * (-1.0 / (z * z) + w / z);
    j(2 * k + 1, 2) = G * (-1.0 / (zm1 * zm1) + w / zm1);
    j(2 * k + 1, 6) = -z * zz;
    j(2 * k + 1, 7) = zz;
  }
}

Vec pack(const Prefactor& pf, const HeunParams& h) {
  Vec x(kUnknowns);
  x << pf.a0, pf.a1, pf.a2, h.gamma, h.delta, h.epsilon, h.alpha, h.q;
  return x;
}

}  // namespace

double matching_residual(const PotentialSpec& spec, const QuerySpec& query, const Prefactor& pf,
                         const HeunParams& heun) {
  Vec R;
  residual_and_jacobian(samples(spec, query), pack(pf, heun), R, nullptr);
  return R.norm();
}

namespace {

// Gauss-Newton on the sampled identities; returns the final residual norm.
double gauss_newton(const std::vector<Sample>& ss, Vec& x, int& iterations) {
  Vec R;
  Mat J;
  for (iterations = 0; iterations < kMaxIterations; ++iterations) {
    residual_and_jacobian(ss, x, R, &J);
    const Vec dx = J.colPivHouseholderQr().solve(-R);
    if (!dx.allFinite()) break;
    x += dx;
    if (dx.norm() <= 1e-15 * (1.0 + x.norm())) {
      ++iterations;
      break;
    }
  }
  residual_and_jacobian(ss, x, R, nullptr);
  return R.norm();
}

// Deflation for a singular root (a double exponent root): append J(x) lambda = 0
// and b.lambda = 1, which makes the root regular again.
double deflated_newton(const std::vector<Sample>& ss, Vec& x, int& iterations) {
  Vec R;
  Mat J;
  residual_and_jacobian(ss, x, R, &J);
  Eigen::JacobiSVD<Mat> svd(J, Eigen::ComputeThinV);
  Vec lambda = svd.matrixV().col(kUnknowns - 1);
  const Vec b = lambda;
  const int n = 2 * kSamples;
  for (int it = 0; it < 50; ++it, ++iterations) {
    residual_and_jacobian(ss, x, R, &J);
    Vec F(2 * n + 1);
    F << R, J * lambda, b.dot(lambda) - Complex(1.0);
    Mat D = Mat::Zero(2 * n + 1, 2 * kUnknowns);
    D.block(0, 0, n, kUnknowns) = J;
    D.block(n, kUnknowns, n, kUnknowns) = J;
    D.block(2 * n, kUnknowns, 1, kUnknowns) = b.adjoint();
    // Second derivatives: only the L^2 term of the second identity is nonlinear.
    for (int k = 0; k < kSamples; ++k) {
      const Complex z = ss[k].z;
      const Complex zz = z * (z - 1.0);
      const Complex e[3] = {1.0, 1.0 / z, 1.0 / (z - 1.0)};
      const Complex el = e[0] * lambda[0] + e[1] * lambda[1] + e[2] * lambda[2];
      for (int i = 0; i < 3; ++i) D(n + 2 * k + 1, i) = 2.0 * zz * zz * e[i] * el;
    }
    const Vec dy = D.colPivHouseholderQr().solve(-F);
    if (!dy.allFinite()) break;
    x += dy.head(kUnknowns);
    lambda += dy.tail(kUnknowns);
    if (dy.norm() <= 1e-15 * (1.0 + x.norm())) break;
  }
  residual_and_jacobian(ss, x, R, nullptr);
  return R.norm();
}

}  // namespace

MatchResult match_coefficients(const PotentialSpec& spec, const QuerySpec& query, const Prefactor& pf_seed) {
  spec.validate();
  query.validate();
  const auto ss = samples(spec, query);
  Vec x = Vec::Zero(kUnknowns);
  const Complex seed[3] = {pf_seed.a0, pf_seed.a1, pf_seed.a2};
  for (int i = 0; i < 3; ++i) x[i] = seed[i] * (1.0 + 1e-3) + 1e-3 * (i + 1);

  int iter = 0;
  double res = gauss_newton(ss, x, iter);
  Vec R;
  Mat J;
  residual_and_jacobian(ss, x, R, &J);
  const Eigen::JacobiSVD<Mat> svd(J);
  const auto& sv = svd.singularValues();
  if (sv[kUnknowns - 1] < 1e-6 * sv[0]) {
    Vec y = x;
    int extra = 0;
    const double dres = deflated_newton(ss, y, extra);
    if (dres <= 1e-10) {
      x = y;
      res = dres;
      iter += extra;
    }
  }
  if (!(res <= 1e-10)) {
    throw Error(ErrorKind::oracle_failure, "coefficient matching did not converge (residual " +
                                               std::to_string(res) + ")");
  }
  MatchResult out;
  out.prefactor = pf_seed;
  out.prefactor.a0 = x[0];
  out.prefactor.a1 = x[1];
  out.prefactor.a2 = x[2];
  out.heun = {x[3], x[4], x[5], x[6], x[7]};
  out.residual = res;
  out.iterations = iter;
  return out;
}

}  // namespace kgheun::construct
