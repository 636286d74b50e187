#include "dpdlogit/hypothesis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dpdlogit/distributions.hpp"
#include "linalg.hpp"

namespace dpdlogit {

LinearHypothesis::LinearHypothesis(Matrix m_matrix, Vector m_vector)
    : m_(std::move(m_matrix)), v_(std::move(m_vector)) {
  if (m_.cols() < 1) throw InvalidArgument("hypothesis needs at least one constraint");
  if (m_.cols() != v_.size()) {
    throw DimensionMismatch("M has " + std::to_string(m_.cols()) +
                            " columns but m has " + std::to_string(v_.size()) +
                            " entries");
  }
  if (m_.cols() > m_.rows()) {
    throw InvalidArgument("more constraints (" + std::to_string(m_.cols()) +
                          ") than coefficients (" + std::to_string(m_.rows()) + ")");
  }
  if (!m_.allFinite() || !v_.allFinite()) {
    throw InvalidArgument("hypothesis has non-finite entries");
  }
  for (Eigen::Index j = 0; j < m_.cols(); ++j) {
    if (numeric_rank(m_.leftCols(j + 1)) < j + 1) {
      throw InvalidArgument("constraint " + std::to_string(j + 1) +
                            " is redundant: it is a linear combination of the "
                            "preceding constraints");
    }
  }
}

Vector LinearHypothesis::residual(const Coefficients& beta) const {
  check_coefficients(beta);
  if (beta.size() != m_.rows()) {
    throw DimensionMismatch("coefficients have length " + std::to_string(beta.size()) +
                            " but the hypothesis involves " +
                            std::to_string(m_.rows()) + " coefficients");
  }
  return m_.transpose() * beta - v_;
}

namespace detail {

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("alpha must lie in (0, 1)");
}

Matrix constraint_precision(const Matrix& sigma, const LinearHypothesis& hyp) {
  if (sigma.rows() != sigma.cols() || sigma.rows() != hyp.dim()) {
    throw DimensionMismatch("covariance matrix does not match the hypothesis");
  }
  const Matrix& m = hyp.m_matrix();
  const Matrix c = symmetrized(m.transpose() * sigma * m);
  if (!c.allFinite()) {
    throw SingularConstraintCovariance("M^T Sigma M has non-finite entries");
  }
  const SymmetricSolver cs(c);
  if (!cs.positive_definite() || !(cs.condition() <= kConditionBound)) {
    throw SingularConstraintCovariance(
        "M^T Sigma M is not positive definite (condition number " +
        std::to_string(cs.condition()) + ")");
  }
  return symmetrized(cs.solve(Matrix(Matrix::Identity(c.rows(), c.cols()))));
}

}  // namespace detail

namespace {

double critical_value(int df, double alpha) { return chi2_quantile(1.0 - alpha, df); }

struct AlternativeTerms {
  double q;
  double sigma;
};

AlternativeTerms alternative_terms(const Coefficients& beta_star, const Matrix& sigma,
                                   const LinearHypothesis& hyp) {
  const Vector r = hyp.residual(beta_star);
  if (r.lpNorm<Eigen::Infinity>() <=
      1e-12 * (1.0 + hyp.m_vector().lpNorm<Eigen::Infinity>())) {
    throw DegenerateAlternative("beta* satisfies the null hypothesis");
  }
  const Matrix prec = detail::constraint_precision(sigma, hyp);
  const Vector pr = prec * r;
  const Vector g = 2.0 * hyp.m_matrix() * pr;
  const double var = g.dot(sigma * g);
  const double q = r.dot(pr);
  if (!(var > 0.0) || !(q > 0.0)) {
    throw DegenerateAlternative("sigma(beta*) vanishes at this alternative");
  }
  return {q, std::sqrt(var)};
}

}  // namespace

WaldTestResult wald_statistic(const FitResult& fit, const LinearHypothesis& hyp,
                              double alpha) {
  return wald_statistic(fit, hyp, fit.sample_size, alpha);
}

WaldTestResult wald_statistic(const FitResult& fit, const LinearHypothesis& hyp,
                              double n, double alpha) {
  detail::check_alpha(alpha);
  if (!fit.converged) throw InvalidArgument("Wald test needs a converged fit");
  if (!(n >= 1.0)) throw InvalidArgument("sample size must be >= 1");
  WaldTestResult out;
  out.df = hyp.df();
  out.alpha = alpha;
  out.statistic = std::max(0.0, n * q_form(fit.beta_hat, hyp, fit.sigma_hat));
  out.p_value = chi2_sf(out.statistic, out.df);
  out.critical_value = critical_value(out.df, alpha);
  out.reject = out.statistic > out.critical_value;
  return out;
}

double q_form(const Coefficients& beta1, const LinearHypothesis& hyp,
              const Matrix& sigma) {
  const Vector r = hyp.residual(beta1);
  const Matrix prec = detail::constraint_precision(sigma, hyp);
  return r.dot(prec * r);
}

double power_sigma(const Coefficients& beta_star, const Matrix& sigma,
                   const LinearHypothesis& hyp) {
  return alternative_terms(beta_star, sigma, hyp).sigma;
}

double power_fixed_alternative(const Coefficients& beta_star, const Matrix& sigma,
                               const LinearHypothesis& hyp, double n, double alpha) {
  detail::check_alpha(alpha);
  if (!(n > 0.0) || !std::isfinite(n)) throw InvalidArgument("n must be positive");
  const AlternativeTerms a = alternative_terms(beta_star, sigma, hyp);
  const double c = critical_value(hyp.df(), alpha);
  const double root = std::sqrt(n);
  return 1.0 - normal_cdf((c / root - root * a.q) / a.sigma);
}

double required_sample_size_real(const Coefficients& beta_star, const Matrix& sigma,
                                 const LinearHypothesis& hyp, double alpha,
                                 double target_power) {
  detail::check_alpha(alpha);
  if (!(target_power > alpha && target_power < 1.0)) {
    throw InvalidArgument("target power must lie in (alpha, 1)");
  }
  const AlternativeTerms a = alternative_terms(beta_star, sigma, hyp);
  const double c = critical_value(hyp.df(), alpha);
  const double z = normal_quantile(1.0 - target_power);
  // √n solves q n + zσ √n - c = 0. For target_power ≥ 1/2 (z ≤ 0) this is
  // (A + B + sqrt(A(A + 2B))) / (2q²) with A = σ²z², B = 2qc.
  const double zs = z * a.sigma;
  const double root = (-zs + std::sqrt(zs * zs + 4.0 * a.q * c)) / (2.0 * a.q);
  return root * root;
}

long required_sample_size(const Coefficients& beta_star, const Matrix& sigma,
                          const LinearHypothesis& hyp, double alpha,
                          double target_power) {
  const double n = required_sample_size_real(beta_star, sigma, hyp, alpha, target_power);
  if (!(n < static_cast<double>(std::numeric_limits<long>::max() / 2))) {
    throw DegenerateAlternative("required sample size overflows");
  }
  return static_cast<long>(std::floor(n)) + 1;
}

double contiguous_noncentrality(const Vector& d, const Matrix& sigma,
                                const LinearHypothesis& hyp) {
  if (d.size() != hyp.dim()) throw DimensionMismatch("drift has the wrong length");
  if (!d.allFinite()) throw InvalidArgument("drift must be finite");
  const Vector t = hyp.m_matrix().transpose() * d;
  const double delta = t.dot(detail::constraint_precision(sigma, hyp) * t);
  return std::max(delta, 0.0);
}

double power_contiguous(const Vector& d, const Matrix& sigma,
                        const LinearHypothesis& hyp, double alpha) {
  detail::check_alpha(alpha);
  const double delta = contiguous_noncentrality(d, sigma, hyp);
  return noncentral_chi2_sf(critical_value(hyp.df(), alpha), hyp.df(), delta);
}

double power_contiguous_contaminated(const Vector& d, double epsilon,
                                     const Vector& if_at_w, const Matrix& sigma,
                                     const LinearHypothesis& hyp, double alpha) {
  detail::check_alpha(alpha);
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw InvalidArgument("epsilon must be finite and >= 0");
  }
  if (d.size() != hyp.dim() || if_at_w.size() != hyp.dim()) {
    throw DimensionMismatch("drift and influence vector must have length k+1");
  }
  const Vector shifted = d + epsilon * if_at_w;
  const Vector t = hyp.m_matrix().transpose() * shifted;
  return cv_series_sf(t, detail::constraint_precision(sigma, hyp), hyp.df(),
                      critical_value(hyp.df(), alpha));
}

double level_contiguous_contaminated(double epsilon, const Vector& if_at_w,
                                     const Matrix& sigma, const LinearHypothesis& hyp,
                                     double alpha) {
  return power_contiguous_contaminated(Vector::Zero(hyp.dim()), epsilon, if_at_w,
                                       sigma, hyp, alpha);
}

}  // namespace dpdlogit
