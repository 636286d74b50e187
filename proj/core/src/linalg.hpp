#pragma once

#include "dpdlogit/types.hpp"

namespace dpdlogit::detail {

/// Factorization of a symmetric matrix with its spectral condition number.
class SymmetricSolver {
 public:
  explicit SymmetricSolver(const Matrix& a);

  /// max|eig| / min|eig|; +inf when the smallest eigenvalue is zero.
  double condition() const noexcept { return condition_; }
  bool positive_definite() const noexcept { return min_eig_ > 0.0; }

  Matrix solve(const Matrix& b) const;
  Vector solve(const Vector& b) const;

 private:
  Eigen::LDLT<Matrix> ldlt_;
  double condition_ = 0.0;
  double min_eig_ = 0.0;
};

inline Matrix symmetrized(const Matrix& a) { return 0.5 * (a + a.transpose()); }

}  // namespace dpdlogit::detail
