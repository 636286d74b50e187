#pragma once

#include <string>

#include "dpdlogit/estimator.hpp"

namespace dpdlogit {

/// H0: M^T β = m with M of size (k+1) × r and full column rank r.
class LinearHypothesis {
 public:
  LinearHypothesis(Matrix m_matrix, Vector m_vector);

  /// Parses comma-separated linear constraints over b0..b{dim-1}, e.g.
  /// "b1=0,b2=0", "b1-b2=0" or "2*b1 + 1/2 b2 = 3".
  static LinearHypothesis parse(const std::string& text, Eigen::Index dim);

  const Matrix& m_matrix() const noexcept { return m_; }
  const Vector& m_vector() const noexcept { return v_; }
  /// Number of constraints r.
  int df() const noexcept { return static_cast<int>(m_.cols()); }
  Eigen::Index dim() const noexcept { return m_.rows(); }

  /// M^T β - m.
  Vector residual(const Coefficients& beta) const;

 private:
  Matrix m_;
  Vector v_;
};

struct WaldTestResult {
  double statistic = 0.0;
  int df = 0;
  double p_value = 1.0;
  double alpha = 0.05;
  double critical_value = 0.0;
  bool reject = false;
};

/// Wald-type test with sample size taken from the fit (n, or N for grouped
/// fits).
WaldTestResult wald_statistic(const FitResult& fit, const LinearHypothesis& hyp,
                              double alpha = 0.05);

WaldTestResult wald_statistic(const FitResult& fit, const LinearHypothesis& hyp,
                              double n, double alpha);

/// (M^Tβ₁ - m)^T (M^T Σ M)⁻¹ (M^Tβ₁ - m).
double q_form(const Coefficients& beta1, const LinearHypothesis& hyp,
              const Matrix& sigma);

/// σ(β*) = sqrt(g^T Σ g) with g = 2 M (M^TΣM)⁻¹ (M^Tβ* - m).
double power_sigma(const Coefficients& beta_star, const Matrix& sigma,
                   const LinearHypothesis& hyp);

/// Approximate power at the fixed alternative β* for a (possibly
/// non-integer) sample size n.
double power_fixed_alternative(const Coefficients& beta_star, const Matrix& sigma,
                               const LinearHypothesis& hyp, double n, double alpha);

/// Real root n* of power_fixed_alternative(n) = target_power.
double required_sample_size_real(const Coefficients& beta_star, const Matrix& sigma,
                                 const LinearHypothesis& hyp, double alpha,
                                 double target_power);

/// ⌊n*⌋ + 1.
long required_sample_size(const Coefficients& beta_star, const Matrix& sigma,
                          const LinearHypothesis& hyp, double alpha,
                          double target_power);

/// δ = d^T M (M^TΣM)⁻¹ M^T d.
double contiguous_noncentrality(const Vector& d, const Matrix& sigma,
                                const LinearHypothesis& hyp);

/// Asymptotic power at β₀ + d/√n.
double power_contiguous(const Vector& d, const Matrix& sigma,
                        const LinearHypothesis& hyp, double alpha);

/// Asymptotic power under contiguous contamination, drift d + ε·IF.
double power_contiguous_contaminated(const Vector& d, double epsilon,
                                     const Vector& if_at_w, const Matrix& sigma,
                                     const LinearHypothesis& hyp, double alpha);

/// Level under contiguous contamination (zero drift).
double level_contiguous_contaminated(double epsilon, const Vector& if_at_w,
                                     const Matrix& sigma, const LinearHypothesis& hyp,
                                     double alpha);

namespace detail {
/// Factorized (M^T Σ M)⁻¹ applied to a right-hand side; throws
/// SingularConstraintCovariance when the matrix is not safely invertible.
Matrix constraint_precision(const Matrix& sigma, const LinearHypothesis& hyp);
void check_alpha(double alpha);
}  // namespace detail

}  // namespace dpdlogit
