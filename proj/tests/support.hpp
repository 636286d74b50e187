#pragma once

#include <dpdlogit/dpdlogit.hpp>

#include <algorithm>
#include <cmath>
#include <random>

namespace testing_support {

using dpdlogit::Dataset;
using dpdlogit::Matrix;
using dpdlogit::Vector;

inline double rel_err(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

inline double max_rel_err(const Vector& a, const Vector& b) {
  const double scale = std::max(a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff());
  return (a - b).cwiseAbs().maxCoeff() / std::max(scale, 1e-300);
}

inline double max_rel_err(const Matrix& a, const Matrix& b) {
  const double scale = std::max(a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff());
  return (a - b).cwiseAbs().maxCoeff() / std::max(scale, 1e-300);
}

/// Random logistic sample with standard normal covariates.
inline Dataset random_dataset(std::mt19937_64& gen, long n, long k, const Vector& beta) {
  std::normal_distribution<double> norm;
  std::uniform_real_distribution<double> unif;
  Matrix x(n, k + 1);
  Vector y(n);
  for (long i = 0; i < n; ++i) {
    x(i, 0) = 1.0;
    for (long j = 1; j <= k; ++j) x(i, j) = norm(gen);
    const double p = 1.0 / (1.0 + std::exp(-x.row(i).dot(beta)));
    y(i) = unif(gen) < p ? 1.0 : 0.0;
  }
  return Dataset(std::move(x), std::move(y));
}

inline Vector random_vector(std::mt19937_64& gen, long size, double sd = 1.0) {
  std::normal_distribution<double> norm(0.0, sd);
  Vector v(size);
  for (long i = 0; i < size; ++i) v(i) = norm(gen);
  return v;
}

}  // namespace testing_support
