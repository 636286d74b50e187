#include <algorithm>
#include <cmath>
#include <string>

#include "dpdlogit/estimator.hpp"

namespace dpdlogit {

void gauss_hermite_normal(int nodes, Vector& x, Vector& w) {
  if (nodes < 1) throw InvalidArgument("quadrature needs at least one node");
  // Golub-Welsch on the Jacobi matrix of the probabilists' Hermite
  // polynomials.
  Vector diag = Vector::Zero(nodes);
  Vector sub(std::max(nodes - 1, 0));
  for (int i = 1; i < nodes; ++i) sub(i - 1) = std::sqrt(static_cast<double>(i));
  Eigen::SelfAdjointEigenSolver<Matrix> eig;
  eig.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  x = eig.eigenvalues();
  w = eig.eigenvectors().row(0).transpose().array().square();
  w /= w.sum();
}

CovariateLaw CovariateLaw::standard_normal(Eigen::Index k) {
  return {Vector::Zero(k), Vector::Ones(k)};
}

void CovariateLaw::validate() const {
  if (mean.size() != sd.size()) {
    throw DimensionMismatch("covariate mean and sd differ in length");
  }
  if (!mean.allFinite()) throw InvalidArgument("covariate means must be finite");
  for (Eigen::Index j = 0; j < sd.size(); ++j) {
    if (!(sd(j) > 0.0) || !std::isfinite(sd(j))) {
      throw InvalidArgument("covariate sd must be positive and finite");
    }
  }
}

Information population_information(const Coefficients& beta,
                                   TuningParameter lambda,
                                   const CovariateLaw& law, int nodes) {
  check_coefficients(beta);
  law.validate();
  const Eigen::Index k = law.k();
  if (beta.size() != k + 1) {
    throw DimensionMismatch("coefficients have length " + std::to_string(beta.size()) +
                            " but the covariate law has " + std::to_string(k) +
                            " covariates");
  }
  Vector u, wq;
  gauss_hermite_normal(nodes, u, wq);

  // z = mean + diag(sd) xi with xi standard normal, so the score is
  // a + rho * (e^T xi) for a unit vector e.
  const Vector slope = beta.tail(k);
  const Vector c = law.sd.cwiseProduct(slope);
  const double a = beta(0) + slope.dot(law.mean);
  const double rho = c.norm();

  // Moments E[f], E[f u], E[f u^2] of f(a + rho u) for the J and K weights.
  double m[2][3] = {{0, 0, 0}, {0, 0, 0}};
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    const double s = a + rho * u(i);
    const double var = std::exp(log_link(s) + log_link_complement(s));
    const double w = dpd_weight(s, lambda);
    const double f[2] = {var * w, var * w * w};
    for (int which = 0; which < 2; ++which) {
      m[which][0] += wq(i) * f[which];
      m[which][1] += wq(i) * f[which] * u(i);
      m[which][2] += wq(i) * f[which] * u(i) * u(i);
    }
  }

  Matrix t = Matrix::Zero(k + 1, k + 1);
  t(0, 0) = 1.0;
  t.block(1, 0, k, 1) = law.mean;
  t.block(1, 1, k, k) = law.sd.asDiagonal();

  auto assemble = [&](const double (&mom)[3]) {
    Matrix g = Matrix::Zero(k + 1, k + 1);
    g(0, 0) = mom[0];
    if (rho > 0.0) {
      const Vector e = c / rho;
      g.block(1, 0, k, 1) = mom[1] * e;
      g.block(0, 1, 1, k) = mom[1] * e.transpose();
      g.block(1, 1, k, k) = (mom[2] - mom[0]) * e * e.transpose() +
                            mom[0] * Matrix::Identity(k, k);
    } else {
      g.block(1, 1, k, k) = mom[0] * Matrix::Identity(k, k);
    }
    Matrix out = t * g * t.transpose();
    return Matrix(0.5 * (out + out.transpose()));
  };

  Information info;
  info.j = assemble(m[0]);
  info.k = assemble(m[1]);
  info.sigma = sandwich_covariance(info.j, info.k);
  return info;
}

}  // namespace dpdlogit
