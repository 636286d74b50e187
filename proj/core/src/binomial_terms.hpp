#pragma once

// Shared per-row computations for Bernoulli and grouped binomial samples.
// A Bernoulli sample is the grouped case with every trial count equal to 1.

#include "dpdlogit/model.hpp"

namespace dpdlogit::detail {

struct BinomialView {
  const Matrix& x;
  const Vector& successes;
  const Vector* trials;  // nullptr: one trial per row
  double total;

  double trials_at(Eigen::Index i) const {
    return trials != nullptr ? (*trials)(i) : 1.0;
  }
};

inline BinomialView view_of(const Dataset& d) {
  return {d.x(), d.y(), nullptr, static_cast<double>(d.n())};
}

inline BinomialView view_of(const GroupedDataset& d) {
  return {d.x(), d.successes(), &d.trials(), d.total_trials()};
}

void check_dims(const BinomialView& v, const Coefficients& beta);

/// Divergence for λ > 0, negative mean log-likelihood for λ = 0.
double objective(const BinomialView& v, const Coefficients& beta,
                 TuningParameter lambda);

Vector equation(const BinomialView& v, const Coefficients& beta,
                TuningParameter lambda);

/// Jacobian of `equation` with respect to β.
Matrix equation_jacobian(const BinomialView& v, const Coefficients& beta,
                         TuningParameter lambda);

/// Σ_i (n_i / N) w π (1-π) x_i x_i^T.
Matrix j_matrix(const BinomialView& v, const Coefficients& beta,
                TuningParameter lambda);

/// Σ_i (n_i / N) w² π (1-π) x_i x_i^T.
Matrix k_matrix(const BinomialView& v, const Coefficients& beta,
                TuningParameter lambda);

}  // namespace dpdlogit::detail
