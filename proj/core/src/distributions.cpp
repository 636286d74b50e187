#include "dpdlogit/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace dpdlogit {
namespace {

constexpr double kGammaEps = 1e-15;
constexpr int kGammaMaxIter = 100000;

void check_df(int df) {
  if (df < 1) throw InvalidArgument("degrees of freedom must be >= 1");
}

void check_finite_arg(double x, const char* what) {
  if (std::isnan(x)) throw InvalidArgument(std::string(what) + " is NaN");
}

double log_gamma_prefix(double a, double x) {
  return a * std::log(x) - x - std::lgamma(a);
}

// Power series for P(a, x), valid for x < a + 1.
double gamma_p_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  for (int n = 1; n < kGammaMaxIter; ++n) {
    term *= x / (a + n);
    sum += term;
    if (std::abs(term) < std::abs(sum) * kGammaEps) break;
  }
  return sum * std::exp(log_gamma_prefix(a, x));
}

// Modified Lentz continued fraction for Q(a, x), valid for x >= a + 1.
double gamma_q_fraction(double a, double x) {
  constexpr double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kGammaMaxIter; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kGammaEps) break;
  }
  return std::exp(log_gamma_prefix(a, x)) * h;
}

void check_gamma_args(double a, double x) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw InvalidArgument("incomplete gamma shape must be positive and finite");
  }
  check_finite_arg(x, "incomplete gamma argument");
}

}  // namespace

Chi2Spec::Chi2Spec(int df, double noncentrality)
    : df_(df), noncentrality_(noncentrality) {
  check_df(df);
  if (!(noncentrality >= 0.0) || !std::isfinite(noncentrality)) {
    throw InvalidArgument("noncentrality must be finite and >= 0");
  }
}

double Chi2Spec::cdf(double x) const {
  return noncentral_chi2_cdf(x, df_, noncentrality_);
}

double Chi2Spec::sf(double x) const {
  return noncentral_chi2_sf(x, df_, noncentrality_);
}

double normal_cdf(double z) {
  check_finite_arg(z, "normal_cdf argument");
  return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

double normal_quantile(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw InvalidArgument("normal_quantile requires p in [0, 1]");
  }
  if (p == 0.0) return -std::numeric_limits<double>::infinity();
  if (p == 1.0) return std::numeric_limits<double>::infinity();

  // Acklam's rational approximation, then one Halley step against erfc.
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00, 2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  double x;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p == 0.5) return 0.0;

  const double e = normal_cdf(x) - p;
  const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
  return x - u / (1.0 + 0.5 * x * u);
}

double regularized_gamma_p(double a, double x) {
  check_gamma_args(a, x);
  if (x <= 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  if (x < a + 1.0) return gamma_p_series(a, x);
  return 1.0 - gamma_q_fraction(a, x);
}

double regularized_gamma_q(double a, double x) {
  check_gamma_args(a, x);
  if (x <= 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_fraction(a, x);
}

double chi2_cdf(double x, int df) {
  check_df(df);
  check_finite_arg(x, "chi2_cdf argument");
  return regularized_gamma_p(0.5 * df, 0.5 * x);
}

double chi2_sf(double x, int df) {
  check_df(df);
  check_finite_arg(x, "chi2_sf argument");
  return regularized_gamma_q(0.5 * df, 0.5 * x);
}

double chi2_quantile(double p, int df) {
  check_df(df);
  if (!(p > 0.0 && p < 1.0)) {
    throw InvalidArgument("chi2_quantile requires p in (0, 1)");
  }
  double lo = 0.0;
  double hi = static_cast<double>(df) + 1.0;
  while (chi2_cdf(hi, df) < p) {
    lo = hi;
    hi *= 2.0;
  }
  for (int i = 0; i < 400; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (chi2_cdf(mid, df) < p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<double> poisson_weights(double rate) {
  if (!(rate >= 0.0) || !std::isfinite(rate)) {
    throw InvalidArgument("Poisson rate must be finite and >= 0");
  }
  std::vector<double> w;
  if (rate == 0.0) {
    w.push_back(1.0);
    return w;
  }
  const double log_rate = std::log(rate);
  double cumulative = 0.0;
  for (int v = 0; v < kSeriesTermCap; ++v) {
    const double pv = std::exp(v * log_rate - rate - std::lgamma(v + 1.0));
    w.push_back(pv);
    cumulative += pv;
    if (v >= rate && 1.0 - cumulative < kSeriesTailBound) return w;
  }
  throw SeriesNotConverged("Poisson mixture with rate " + std::to_string(rate) +
                           " needs more than " + std::to_string(kSeriesTermCap) +
                           " terms");
}

double noncentral_chi2_cdf(double x, int df, double delta) {
  check_df(df);
  check_finite_arg(x, "noncentral_chi2_cdf argument");
  if (!(delta >= 0.0)) throw InvalidArgument("noncentrality must be >= 0");
  const std::vector<double> w = poisson_weights(0.5 * delta);
  double sum = 0.0;
  for (std::size_t v = 0; v < w.size(); ++v) {
    sum += w[v] * chi2_cdf(x, df + 2 * static_cast<int>(v));
  }
  return std::min(sum, 1.0);
}

double noncentral_chi2_sf(double x, int df, double delta) {
  check_df(df);
  check_finite_arg(x, "noncentral_chi2_sf argument");
  if (!(delta >= 0.0)) throw InvalidArgument("noncentrality must be >= 0");
  const std::vector<double> w = poisson_weights(0.5 * delta);
  double sum = 0.0;
  for (std::size_t v = 0; v < w.size(); ++v) {
    sum += w[v] * chi2_sf(x, df + 2 * static_cast<int>(v));
  }
  return std::min(sum, 1.0);
}

namespace {

double quadratic(const Vector& t, const Matrix& a) {
  if (a.rows() != a.cols() || a.rows() != t.size()) {
    throw DimensionMismatch("C_v coefficient needs a square matrix matching t");
  }
  double q = t.dot(a * t);
  if (q < 0.0) {
    if (q < -1e-12 * (1.0 + t.squaredNorm() * a.cwiseAbs().maxCoeff())) {
      throw InvalidArgument("C_v coefficient requires a positive semidefinite matrix");
    }
    q = 0.0;
  }
  return q;
}

}  // namespace

double cv_coefficient(const Vector& t, const Matrix& a, int v) {
  if (v < 0) throw InvalidArgument("C_v index must be >= 0");
  const double q = quadratic(t, a);
  if (q == 0.0) return v == 0 ? 1.0 : 0.0;
  return std::exp(v * std::log(0.5 * q) - std::lgamma(v + 1.0) - 0.5 * q);
}

double cv_series_sf(const Vector& t, const Matrix& a, int df, double crit) {
  check_df(df);
  const double q = quadratic(t, a);
  double mass = 0.0;
  double sum = 0.0;
  for (int v = 0; v < kSeriesTermCap; ++v) {
    const double c = cv_coefficient(t, a, v);
    mass += c;
    sum += c * chi2_sf(crit, df + 2 * v);
    if (v >= 0.5 * q && 1.0 - mass < kSeriesTailBound) return std::min(sum, 1.0);
  }
  throw SeriesNotConverged("C_v series did not reach the tail bound within " +
                           std::to_string(kSeriesTermCap) + " terms");
}

double kstar_series(double delta, int df, double crit) {
  check_df(df);
  if (!(delta >= 0.0)) throw InvalidArgument("noncentrality must be >= 0");
  const std::vector<double> w = poisson_weights(0.5 * delta);
  double sum = 0.0;
  double previous = 0.0;
  for (std::size_t v = 0; v <= w.size(); ++v) {
    const double current = v < w.size() ? w[v] : 0.0;
    sum += (previous - current) * chi2_sf(crit, df + 2 * static_cast<int>(v));
    previous = current;
  }
  return sum;
}

}  // namespace dpdlogit
