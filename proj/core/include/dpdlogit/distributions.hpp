#pragma once

#include <functional>
#include <vector>

#include "dpdlogit/types.hpp"

namespace dpdlogit {

/// Poisson tail mass below which mixture series stop.
inline constexpr double kSeriesTailBound = 1e-12;
/// Hard cap on the number of mixture terms.
inline constexpr int kSeriesTermCap = 10000;

/// Chi-square law with `df` degrees of freedom and noncentrality `noncentrality`.
class Chi2Spec {
 public:
  explicit Chi2Spec(int df, double noncentrality = 0.0);

  int df() const noexcept { return df_; }
  double noncentrality() const noexcept { return noncentrality_; }

  double cdf(double x) const;
  double sf(double x) const;

 private:
  int df_;
  double noncentrality_;
};

double normal_cdf(double z);
/// Inverse of normal_cdf on (0,1).
double normal_quantile(double p);

/// Regularized lower and upper incomplete gamma functions.
double regularized_gamma_p(double a, double x);
double regularized_gamma_q(double a, double x);

double chi2_cdf(double x, int df);
/// Upper tail 1 - chi2_cdf, computed without cancellation.
double chi2_sf(double x, int df);
double chi2_quantile(double p, int df);

/// Poisson(rate) probabilities p_0..p_V, with V the first index whose
/// remaining tail mass is below kSeriesTailBound. Throws SeriesNotConverged
/// past kSeriesTermCap terms.
std::vector<double> poisson_weights(double rate);

double noncentral_chi2_cdf(double x, int df, double delta);
double noncentral_chi2_sf(double x, int df, double delta);

/// (t^T A t)^v / (v! 2^v) * exp(-t^T A t / 2).
double cv_coefficient(const Vector& t, const Matrix& a, int v);

/// Σ_v C_v(t, A) P(χ²_{df+2v} > crit), summed until the Poisson tail bound.
double cv_series_sf(const Vector& t, const Matrix& a, int df, double crit);

/// K*_df(δ) = e^{-δ/2} Σ_v δ^{v-1}(2v-δ)/(v! 2^v) P(χ²_{df+2v} > crit),
/// which is twice d/dδ of P(χ²_df(δ) > crit).
double kstar_series(double delta, int df, double crit);

}  // namespace dpdlogit
