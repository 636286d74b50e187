#pragma once

#include <optional>
#include <vector>

#include "dpdlogit/model.hpp"

namespace dpdlogit {

/// Largest spectral condition number accepted when inverting J.
inline constexpr double kConditionBound = 1e12;

struct FitOptions {
  /// Starting point. Defaults to the λ = 0 fit (itself started at zero).
  std::optional<Coefficients> init;
  int max_iterations = 100;
  /// Bound on the infinity norm of the estimating equation. Defaults to
  /// 1e-8 times the number of observations.
  std::optional<double> grad_tolerance;
  int step_halving_max = 30;
  /// ‖β‖∞ beyond which the objective is treated as unbounded along a ray.
  double separation_threshold = 1e3;
  double condition_bound = kConditionBound;

  void validate() const;
};

struct FitResult {
  Coefficients beta_hat;
  TuningParameter lambda{0.0};
  Matrix j_hat;
  Matrix k_hat;
  Matrix sigma_hat;
  bool converged = false;
  int iterations = 0;
  double grad_norm = 0.0;
  double grad_tolerance = 0.0;
  double objective = 0.0;
  /// n for Bernoulli samples, N = Σ n_i for grouped samples.
  double sample_size = 0.0;
  /// Jacobian of the estimating equation is positive definite at beta_hat.
  bool local_minimum = false;
};

FitResult fit_mdpde(const Dataset& data, TuningParameter lambda,
                    const FitOptions& opts = {});

FitResult fit_mdpde_grouped(const GroupedDataset& data, TuningParameter lambda,
                            const FitOptions& opts = {});

/// Fits every λ in `lambdas`, warm-starting each from the next smaller one.
/// Results are returned in the order of `lambdas`.
std::vector<FitResult> fit_mdpde_path(const Dataset& data,
                                      const std::vector<TuningParameter>& lambdas,
                                      const FitOptions& opts = {});

std::vector<FitResult> fit_mdpde_grouped_path(
    const GroupedDataset& data, const std::vector<TuningParameter>& lambdas,
    const FitOptions& opts = {});

/// Ĵ_λ(β) = (1/n) Σ π_i(1-π_i) w_λ(x_i^Tβ) x_i x_i^T.
Matrix estimate_j(const Dataset& data, const Coefficients& beta,
                  TuningParameter lambda);

/// K̂_λ(β) = (1/n) Σ π_i(1-π_i) w_λ(x_i^Tβ)² x_i x_i^T.
Matrix estimate_k(const Dataset& data, const Coefficients& beta,
                  TuningParameter lambda);

/// Grouped analogues with α_i = n_i / N.
Matrix estimate_j_grouped(const GroupedDataset& data, const Coefficients& beta,
                          TuningParameter lambda);
Matrix estimate_k_grouped(const GroupedDataset& data, const Coefficients& beta,
                          TuningParameter lambda);

/// J⁻¹ K J⁻¹ through a factorization of J. Throws SingularInformation when
/// the condition number of J exceeds `condition_bound`.
Matrix sandwich_covariance(const Matrix& j, const Matrix& k,
                           double condition_bound = kConditionBound);

/// Independent normal covariates x = (1, z), z_j ~ N(mean_j, sd_j²).
struct CovariateLaw {
  Vector mean;
  Vector sd;

  static CovariateLaw standard_normal(Eigen::Index k);
  Eigen::Index k() const noexcept { return mean.size(); }
  void validate() const;
};

struct Information {
  Matrix j;
  Matrix k;
  Matrix sigma;
};

/// Population J_λ, K_λ and Σ_λ at β under `law`, by Gauss–Hermite
/// quadrature along the direction of the slope vector.
Information population_information(const Coefficients& beta,
                                   TuningParameter lambda,
                                   const CovariateLaw& law, int nodes = 80);

/// Empirical Ĵ, K̂ and Σ̂ at β from a pilot sample.
Information empirical_information(const Dataset& data, const Coefficients& beta,
                                  TuningParameter lambda);

/// Nodes and weights of the Gauss–Hermite rule for the standard normal
/// density (weights sum to 1).
void gauss_hermite_normal(int nodes, Vector& x, Vector& w);

}  // namespace dpdlogit
