#include "linalg.hpp"

#include <algorithm>
#include <limits>

#include "dpdlogit/model.hpp"

namespace dpdlogit {

Eigen::Index numeric_rank(const Matrix& x) {
  if (x.size() == 0) return 0;
  Eigen::BDCSVD<Matrix> svd(x);
  const Vector& sv = svd.singularValues();
  const double largest = sv.size() > 0 ? sv(0) : 0.0;
  const double tol = static_cast<double>(std::max(x.rows(), x.cols())) *
                     std::numeric_limits<double>::epsilon() * largest;
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > tol) ++rank;
  }
  return rank;
}

namespace detail {

SymmetricSolver::SymmetricSolver(const Matrix& a) : ldlt_(a) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(a, Eigen::EigenvaluesOnly);
  const Vector& ev = eig.eigenvalues();
  min_eig_ = ev.minCoeff();
  const double max_abs = ev.cwiseAbs().maxCoeff();
  const double min_abs = ev.cwiseAbs().minCoeff();
  condition_ = min_abs > 0.0 ? max_abs / min_abs
                             : std::numeric_limits<double>::infinity();
}

Matrix SymmetricSolver::solve(const Matrix& b) const { return ldlt_.solve(b); }

Vector SymmetricSolver::solve(const Vector& b) const { return ldlt_.solve(b); }

}  // namespace detail
}  // namespace dpdlogit
