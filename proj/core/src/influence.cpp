#include "dpdlogit/influence.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dpdlogit/distributions.hpp"
#include "linalg.hpp"

namespace dpdlogit {
namespace {

constexpr double kNullTolerance = 1e-8;

detail::SymmetricSolver information_solver(const Matrix& j, Eigen::Index dim) {
  if (j.rows() != dim || j.cols() != dim) {
    throw DimensionMismatch("J must be " + std::to_string(dim) + "x" +
                            std::to_string(dim));
  }
  if (!j.allFinite()) throw SingularInformation("J has non-finite entries");
  detail::SymmetricSolver js(detail::symmetrized(j));
  if (!(js.condition() <= kConditionBound)) {
    throw SingularInformation("J is numerically singular (condition number " +
                              std::to_string(js.condition()) + ")");
  }
  return js;
}

void require_null(const Coefficients& beta0, const LinearHypothesis& hyp) {
  const double gap = hyp.residual(beta0).norm();
  if (gap > kNullTolerance) {
    throw NullViolated("beta0 violates the null hypothesis (|M^T beta0 - m| = " +
                       std::to_string(gap) + ")");
  }
}

}  // namespace

void ContaminationPoint::validate(Eigen::Index dim) const {
  if (x_t.size() != dim) {
    throw DimensionMismatch("contamination point has " + std::to_string(x_t.size()) +
                            " entries, expected " + std::to_string(dim));
  }
  if (!x_t.allFinite()) throw InvalidArgument("contamination point must be finite");
  if (x_t(0) != 1.0) throw InvalidArgument("contamination point must start with 1");
  if (y_t != 0.0 && y_t != 1.0) throw InvalidArgument("y_t must be 0 or 1");
}

FitContext FitContext::from(const FitResult& fit) { return {fit.j_hat, fit.sigma_hat}; }

FitContext FitContext::from(const Information& info) { return {info.j, info.sigma}; }

IfResult if_mdpde(const ContaminationPoint& w, const Coefficients& beta0,
                  const Matrix& j, TuningParameter lambda) {
  check_coefficients(beta0);
  w.validate(beta0.size());
  const detail::SymmetricSolver js = information_solver(j, beta0.size());
  return {js.solve(Vector(psi(w.x_t, w.y_t, beta0, lambda))), lambda};
}

double if2_wald(const ContaminationPoint& w, const Coefficients& beta0,
                const FitContext& ctx, const LinearHypothesis& hyp,
                TuningParameter lambda) {
  require_null(beta0, hyp);
  const Vector inf = if_mdpde(w, beta0, ctx.j, lambda).if_vector;
  const Vector t = hyp.m_matrix().transpose() * inf;
  return std::max(0.0, t.dot(detail::constraint_precision(ctx.sigma, hyp) * t));
}

double pif(const ContaminationPoint& w, const Vector& d, const Coefficients& beta0,
           const FitContext& ctx, const LinearHypothesis& hyp, TuningParameter lambda,
           double alpha) {
  detail::check_alpha(alpha);
  require_null(beta0, hyp);
  if (d.size() != beta0.size()) throw DimensionMismatch("drift has the wrong length");
  const Vector inf = if_mdpde(w, beta0, ctx.j, lambda).if_vector;
  const Matrix& m = hyp.m_matrix();
  const Matrix prec = detail::constraint_precision(ctx.sigma, hyp);
  const Vector s = m * (prec * (m.transpose() * d));
  const double delta = std::max(0.0, s.dot(d));
  const double crit = chi2_quantile(1.0 - alpha, hyp.df());
  return kstar_series(delta, hyp.df(), crit) * s.dot(inf);
}

double lif(const ContaminationPoint& w, const Coefficients& beta0,
           const FitContext& ctx, const LinearHypothesis& hyp, TuningParameter lambda,
           double alpha) {
  detail::check_alpha(alpha);
  require_null(beta0, hyp);
  w.validate(beta0.size());
  (void)ctx;
  (void)lambda;
  return 0.0;
}

IfResult if_mdpde_fixed_design(Eigen::Index group_index, double y_t,
                               const GroupedDataset& data, const Coefficients& beta0,
                               TuningParameter lambda, bool all_groups) {
  if (all_groups) {
    return if_mdpde_fixed_design(Vector::Constant(data.groups(), y_t), data, beta0,
                                 lambda);
  }
  if (group_index < 0 || group_index >= data.groups()) {
    throw IndexOutOfRange("group index " + std::to_string(group_index) +
                          " outside [0, " + std::to_string(data.groups()) + ")");
  }
  const Matrix j = estimate_j_grouped(data, beta0, lambda);
  const detail::SymmetricSolver js = information_solver(j, beta0.size());
  const Vector x = data.x().row(group_index).transpose();
  return {js.solve(Vector(psi(x, y_t, beta0, lambda))), lambda};
}

IfResult if_mdpde_fixed_design(const Vector& y_t, const GroupedDataset& data,
                               const Coefficients& beta0, TuningParameter lambda) {
  if (y_t.size() != data.groups()) {
    throw DimensionMismatch("need one contamination response per group");
  }
  const Matrix j = estimate_j_grouped(data, beta0, lambda);
  const detail::SymmetricSolver js = information_solver(j, beta0.size());
  Vector total = Vector::Zero(beta0.size());
  for (Eigen::Index i = 0; i < data.groups(); ++i) {
    total += psi(data.x().row(i).transpose(), y_t(i), beta0, lambda);
  }
  return {js.solve(total), lambda};
}

}  // namespace dpdlogit
