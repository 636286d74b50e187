#pragma once

#include "dpdlogit/types.hpp"

namespace dpdlogit {

/// Bernoulli sample: design matrix with a leading column of ones and 0/1
/// responses.
///
/// Construction checks structure (shape, intercept column, binary
/// responses, finiteness). Estimability (n > k+1 and full column rank) is
/// checked by `require_estimable`, which the fitters and loaders call.
class Dataset {
 public:
  Dataset(Matrix x, Vector y);

  const Matrix& x() const noexcept { return x_; }
  const Vector& y() const noexcept { return y_; }

  /// Number of observations.
  Eigen::Index n() const noexcept { return x_.rows(); }
  /// Number of covariates, excluding the intercept.
  Eigen::Index k() const noexcept { return x_.cols() - 1; }
  /// Number of coefficients (k + 1).
  Eigen::Index dim() const noexcept { return x_.cols(); }

  /// Throws SingularDesign when n <= k+1 or the design is rank deficient.
  void require_estimable() const;

 private:
  Matrix x_;
  Vector y_;
};

/// Fixed-design grouped binomial sample: I covariate profiles, each with
/// `trials[i]` Bernoulli trials of which `successes[i]` succeeded.
class GroupedDataset {
 public:
  GroupedDataset(Matrix x, Vector trials, Vector successes);

  /// Singleton groups, one per Bernoulli observation.
  static GroupedDataset from_bernoulli(const Dataset& data);

  const Matrix& x() const noexcept { return x_; }
  const Vector& trials() const noexcept { return trials_; }
  const Vector& successes() const noexcept { return successes_; }

  Eigen::Index groups() const noexcept { return x_.rows(); }
  Eigen::Index k() const noexcept { return x_.cols() - 1; }
  Eigen::Index dim() const noexcept { return x_.cols(); }
  /// Total number of trials N.
  double total_trials() const noexcept { return total_; }

  void require_estimable() const;

 private:
  Matrix x_;
  Vector trials_;
  Vector successes_;
  double total_ = 0.0;
};

/// Numeric rank of `x` from its singular values, with threshold
/// max(rows, cols) * eps * sigma_max.
Eigen::Index numeric_rank(const Matrix& x);

// ---------------------------------------------------------------------------
// Scalar primitives of the score s = x^T beta.

/// Logistic function e^s / (1 + e^s), evaluated on the overflow-free branch.
double link_probability(double eta);

/// log(pi(s)) and log(1 - pi(s)).
double log_link(double s);
double log_link_complement(double s);

/// Estimating-equation weight (e^{λs} + e^s) / (1 + e^s)^{λ+1}, which equals
/// pi^λ (1-pi) + pi (1-pi)^λ. Identically 1 at λ = 0.
double dpd_weight(double s, TuningParameter lambda);

/// d/ds of dpd_weight.
double dpd_weight_derivative(double s, TuningParameter lambda);

/// Scalar factor of the ψ-function: (e^{λs}+e^s)(e^s - y(1+e^s)) /
/// (1+e^s)^{λ+2} = dpd_weight(s) * (pi(s) - y).
double tilde_psi(double s, double y, TuningParameter lambda);

// ---------------------------------------------------------------------------
// Sample-level quantities.

/// Density power divergence between the empirical and model probability
/// vectors, including the additive n/λ term and the 1/n^{1+λ} scale.
/// Requires λ > 0; use neg_loglik_objective for the λ = 0 limit.
double dpd_objective(const Dataset& data, const Coefficients& beta,
                     TuningParameter lambda);

/// -(1/n) log L(β).
double neg_loglik_objective(const Dataset& data, const Coefficients& beta);

/// ψ_λ(x, y, β), a vector of length k+1.
Vector psi(const Vector& x, double y, const Coefficients& beta,
           TuningParameter lambda);

/// Σ_i ψ_λ(x_i, y_i, β).
Vector estimating_equation(const Dataset& data, const Coefficients& beta,
                           TuningParameter lambda);

/// Σ_i w_λ(x_i^T β) (n_i π_i - n_{i1}) x_i.
Vector grouped_estimating_equation(const GroupedDataset& data,
                                   const Coefficients& beta,
                                   TuningParameter lambda);

/// Divergence over the latent Bernoulli observations of a grouped sample
/// (λ > 0), scaled by 1/N^{1+λ}.
double grouped_dpd_objective(const GroupedDataset& data,
                             const Coefficients& beta, TuningParameter lambda);

/// -(1/N) Σ_i [n_{i1} log π_i + (n_i - n_{i1}) log(1 - π_i)].
double grouped_neg_loglik_objective(const GroupedDataset& data,
                                    const Coefficients& beta);

}  // namespace dpdlogit
