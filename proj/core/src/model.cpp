#include "dpdlogit/model.hpp"

#include <cmath>
#include <string>

#include "binomial_terms.hpp"

namespace dpdlogit {
namespace {

double softplus(double t) {
  return t > 0.0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t));
}

bool is_binary(double v) { return v == 0.0 || v == 1.0; }

bool is_whole(double v) { return std::isfinite(v) && std::floor(v) == v; }

void check_structure(const Matrix& x, Eigen::Index responses) {
  if (x.cols() < 1 || x.rows() < 1) {
    throw InvariantViolation("design matrix must have at least one row and column");
  }
  if (x.rows() != responses) {
    throw DimensionMismatch("design has " + std::to_string(x.rows()) +
                            " rows but " + std::to_string(responses) +
                            " responses were given");
  }
  if (!x.allFinite()) throw InvariantViolation("design matrix has non-finite entries");
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    if (x(i, 0) != 1.0) {
      throw InvariantViolation("first design column must be all ones (row " +
                               std::to_string(i + 1) + ")");
    }
  }
}

void check_estimable(const Matrix& x, Eigen::Index rows) {
  if (rows <= x.cols()) {
    throw SingularDesign("need more observations (" + std::to_string(rows) +
                         ") than coefficients (" + std::to_string(x.cols()) + ")");
  }
  if (numeric_rank(x) < x.cols()) {
    throw SingularDesign("design matrix does not have full column rank");
  }
}

}  // namespace

Dataset::Dataset(Matrix x, Vector y) : x_(std::move(x)), y_(std::move(y)) {
  check_structure(x_, y_.size());
  for (Eigen::Index i = 0; i < y_.size(); ++i) {
    if (!is_binary(y_(i))) {
      throw InvariantViolation("response must be 0 or 1 (row " +
                               std::to_string(i + 1) + ")");
    }
  }
}

void Dataset::require_estimable() const { check_estimable(x_, n()); }

GroupedDataset::GroupedDataset(Matrix x, Vector trials, Vector successes)
    : x_(std::move(x)), trials_(std::move(trials)), successes_(std::move(successes)) {
  check_structure(x_, trials_.size());
  if (successes_.size() != trials_.size()) {
    throw DimensionMismatch("trials and successes differ in length");
  }
  for (Eigen::Index i = 0; i < trials_.size(); ++i) {
    const std::string row = " (row " + std::to_string(i + 1) + ")";
    if (!is_whole(trials_(i)) || trials_(i) < 1.0) {
      throw InvariantViolation("trials must be a positive integer" + row);
    }
    if (!is_whole(successes_(i)) || successes_(i) < 0.0 ||
        successes_(i) > trials_(i)) {
      throw InvariantViolation("successes must be an integer in [0, trials]" + row);
    }
  }
  total_ = trials_.sum();
}

GroupedDataset GroupedDataset::from_bernoulli(const Dataset& data) {
  return GroupedDataset(data.x(), Vector::Ones(data.n()), data.y());
}

void GroupedDataset::require_estimable() const { check_estimable(x_, groups()); }

double link_probability(double eta) {
  if (eta >= 0.0) return 1.0 / (1.0 + std::exp(-eta));
  const double e = std::exp(eta);
  return e / (1.0 + e);
}

double log_link(double s) { return -softplus(-s); }

double log_link_complement(double s) { return -softplus(s); }

double dpd_weight(double s, TuningParameter lambda) {
  const double l = lambda.value();
  if (l == 0.0) return 1.0;
  const double lp = log_link(s);
  const double lq = log_link_complement(s);
  return std::exp(l * lp + lq) + std::exp(lp + l * lq);
}

double dpd_weight_derivative(double s, TuningParameter lambda) {
  const double l = lambda.value();
  if (l == 0.0) return 0.0;
  const double lp = log_link(s);
  const double lq = log_link_complement(s);
  return l * std::exp(l * lp + 2.0 * lq) - std::exp((l + 1.0) * lp + lq) +
         std::exp(lp + (l + 1.0) * lq) - l * std::exp(2.0 * lp + l * lq);
}

double tilde_psi(double s, double y, TuningParameter lambda) {
  return dpd_weight(s, lambda) * (link_probability(s) - y);
}

namespace detail {

void check_dims(const BinomialView& v, const Coefficients& beta) {
  check_coefficients(beta);
  if (beta.size() != v.x.cols()) {
    throw DimensionMismatch("coefficient vector has length " +
                            std::to_string(beta.size()) + ", design has " +
                            std::to_string(v.x.cols()) + " columns");
  }
}

double objective(const BinomialView& v, const Coefficients& beta,
                 TuningParameter lambda) {
  check_dims(v, beta);
  const Vector score = v.x * beta;
  const double l = lambda.value();
  double sum = 0.0;
  for (Eigen::Index i = 0; i < score.size(); ++i) {
    const double t = v.trials_at(i);
    const double s1 = v.successes(i);
    const double s0 = t - s1;
    const double lp = log_link(score(i));
    const double lq = log_link_complement(score(i));
    if (l == 0.0) {
      sum -= s1 * lp + s0 * lq;
      continue;
    }
    // The n/λ constant is folded into the expm1 terms: -(1+1/λ) p^λ + 1/λ
    // = -p^λ - (p^λ - 1)/λ.
    sum += t * (std::exp((1.0 + l) * lp) + std::exp((1.0 + l) * lq)) -
           (s1 * std::exp(l * lp) + s0 * std::exp(l * lq)) -
           (s1 * std::expm1(l * lp) + s0 * std::expm1(l * lq)) / l;
  }
  return sum / std::pow(v.total, 1.0 + l);
}

Vector equation(const BinomialView& v, const Coefficients& beta,
                TuningParameter lambda) {
  check_dims(v, beta);
  const Vector score = v.x * beta;
  Vector c(score.size());
  for (Eigen::Index i = 0; i < score.size(); ++i) {
    c(i) = dpd_weight(score(i), lambda) *
           (v.trials_at(i) * link_probability(score(i)) - v.successes(i));
  }
  return v.x.transpose() * c;
}

Matrix equation_jacobian(const BinomialView& v, const Coefficients& beta,
                         TuningParameter lambda) {
  check_dims(v, beta);
  const Vector score = v.x * beta;
  Vector c(score.size());
  for (Eigen::Index i = 0; i < score.size(); ++i) {
    const double s = score(i);
    const double p = link_probability(s);
    const double t = v.trials_at(i);
    c(i) = dpd_weight_derivative(s, lambda) * (t * p - v.successes(i)) +
           t * dpd_weight(s, lambda) * p * (1.0 - p);
  }
  return v.x.transpose() * c.asDiagonal() * v.x;
}

namespace {

template <int Power>
Matrix weighted_information(const BinomialView& v, const Coefficients& beta,
                            TuningParameter lambda) {
  check_dims(v, beta);
  const Vector score = v.x * beta;
  Vector c(score.size());
  for (Eigen::Index i = 0; i < score.size(); ++i) {
    const double s = score(i);
    // π(1-π) = exp(log π + log(1-π)) keeps the tails exact.
    const double var = std::exp(log_link(s) + log_link_complement(s));
    const double w = dpd_weight(s, lambda);
    c(i) = std::sqrt(v.trials_at(i) * var * (Power == 1 ? w : w * w) / v.total);
  }
  const Matrix scaled = c.asDiagonal() * v.x;
  Matrix m = Matrix::Zero(v.x.cols(), v.x.cols());
  m.selfadjointView<Eigen::Lower>().rankUpdate(scaled.transpose());
  return m.selfadjointView<Eigen::Lower>();
}

}  // namespace

Matrix j_matrix(const BinomialView& v, const Coefficients& beta,
                TuningParameter lambda) {
  return weighted_information<1>(v, beta, lambda);
}

Matrix k_matrix(const BinomialView& v, const Coefficients& beta,
                TuningParameter lambda) {
  return weighted_information<2>(v, beta, lambda);
}

}  // namespace detail

double dpd_objective(const Dataset& data, const Coefficients& beta,
                     TuningParameter lambda) {
  if (lambda.is_mle()) {
    throw InvalidArgument(
        "dpd_objective requires lambda > 0; use neg_loglik_objective for lambda = 0");
  }
  return detail::objective(detail::view_of(data), beta, lambda);
}

double neg_loglik_objective(const Dataset& data, const Coefficients& beta) {
  return detail::objective(detail::view_of(data), beta, TuningParameter(0.0));
}

Vector psi(const Vector& x, double y, const Coefficients& beta,
           TuningParameter lambda) {
  check_coefficients(beta);
  if (x.size() != beta.size()) {
    throw DimensionMismatch("covariate vector and coefficients differ in length");
  }
  if (!is_binary(y)) throw InvalidArgument("response must be 0 or 1");
  return tilde_psi(x.dot(beta), y, lambda) * x;
}

Vector estimating_equation(const Dataset& data, const Coefficients& beta,
                           TuningParameter lambda) {
  return detail::equation(detail::view_of(data), beta, lambda);
}

Vector grouped_estimating_equation(const GroupedDataset& data,
                                   const Coefficients& beta,
                                   TuningParameter lambda) {
  return detail::equation(detail::view_of(data), beta, lambda);
}

double grouped_dpd_objective(const GroupedDataset& data,
                             const Coefficients& beta, TuningParameter lambda) {
  if (lambda.is_mle()) {
    throw InvalidArgument(
        "grouped_dpd_objective requires lambda > 0; use the log-likelihood form");
  }
  return detail::objective(detail::view_of(data), beta, lambda);
}

double grouped_neg_loglik_objective(const GroupedDataset& data,
                                    const Coefficients& beta) {
  return detail::objective(detail::view_of(data), beta, TuningParameter(0.0));
}

}  // namespace dpdlogit
