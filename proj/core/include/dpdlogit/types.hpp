#pragma once

#include <Eigen/Dense>

#include <cmath>

#include "dpdlogit/errors.hpp"

namespace dpdlogit {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Regression coefficients, intercept first.
using Coefficients = Eigen::VectorXd;

/// Density power divergence tuning parameter. Zero selects the maximum
/// likelihood limit.
class TuningParameter {
 public:
  constexpr TuningParameter() = default;
  explicit TuningParameter(double lambda) : value_(lambda) {
    if (!std::isfinite(lambda) || lambda < 0.0) {
      throw InvalidArgument("tuning parameter must be finite and >= 0");
    }
  }

  constexpr double value() const noexcept { return value_; }
  constexpr bool is_mle() const noexcept { return value_ == 0.0; }

  friend constexpr bool operator==(TuningParameter, TuningParameter) = default;

 private:
  double value_ = 0.0;
};

/// Throws InvalidArgument unless every entry of `beta` is finite and it is
/// non-empty.
inline void check_coefficients(const Coefficients& beta) {
  if (beta.size() < 1 || !beta.allFinite()) {
    throw InvalidArgument("coefficients must be non-empty and finite");
  }
}

}  // namespace dpdlogit
