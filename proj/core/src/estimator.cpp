#include "dpdlogit/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>

#include "binomial_terms.hpp"
#include "linalg.hpp"

namespace dpdlogit {
namespace {

using detail::BinomialView;

struct Solution {
  Coefficients beta;
  double objective = 0.0;
  double grad_norm = 0.0;
  int iterations = 0;
  bool local_minimum = false;
};

class Solver {
 public:
  Solver(const BinomialView& view, TuningParameter lambda, const FitOptions& opts)
      : view_(view), lambda_(lambda), opts_(opts) {
    tol_ = opts.grad_tolerance.value_or(1e-8 * view.total);
  }

  double tolerance() const { return tol_; }

  Solution solve(Coefficients beta) const {
    double f = detail::objective(view_, beta, lambda_);
    Vector g = detail::equation(view_, beta, lambda_);
    int it = 0;
    for (;; ++it) {
      check_separation(beta);
      if (g.lpNorm<Eigen::Infinity>() <= tol_) break;
      if (it >= opts_.max_iterations) {
        if (perfect_fit(beta)) check_separation(beta, true);
        throw NonConvergence("no root after " + std::to_string(it) +
                             " iterations; equation norm " +
                             std::to_string(g.lpNorm<Eigen::Infinity>()));
      }
      const Matrix h = detail::equation_jacobian(view_, beta, lambda_);
      bool moved = false;
      for (const Vector& dir : directions(h, g)) {
        if ((moved = line_search(beta, f, g, dir))) break;
      }
      if (!moved) {
        if (perfect_fit(beta)) check_separation(beta, true);
        throw NonConvergence("line search stalled at equation norm " +
                             std::to_string(g.lpNorm<Eigen::Infinity>()));
      }
    }
    Solution s;
    s.beta = std::move(beta);
    s.objective = f;
    s.grad_norm = g.lpNorm<Eigen::Infinity>();
    s.iterations = it;
    const Matrix h = detail::equation_jacobian(view_, s.beta, lambda_);
    s.local_minimum = detail::SymmetricSolver(detail::symmetrized(h)).positive_definite();
    return s;
  }

 private:
  // Newton when the Jacobian is positive definite; otherwise Newton on the
  // absolute eigenvalues, then scaled steepest descent.
  static std::vector<Vector> directions(const Matrix& h, const Vector& g) {
    std::vector<Vector> out;
    const Eigen::SelfAdjointEigenSolver<Matrix> eig(detail::symmetrized(h));
    const Vector& ev = eig.eigenvalues();
    const double top = ev.cwiseAbs().maxCoeff();
    if (!(top > 0.0) || !ev.allFinite()) {
      out.push_back(-g);
      return out;
    }
    const Matrix& v = eig.eigenvectors();
    const double floor = 1e-10 * top;
    if (ev.minCoeff() > floor) {
      out.push_back(-v * (v.transpose() * g).cwiseQuotient(ev));
    } else {
      const Vector mag = ev.cwiseAbs().cwiseMax(floor);
      out.push_back(-v * (v.transpose() * g).cwiseQuotient(mag));
    }
    out.push_back(-g / top);
    return out;
  }

  bool line_search(Coefficients& beta, double& f, Vector& g, const Vector& dir) const {
    const double g_norm = g.norm();
    // Objective differences this small are rounding noise; the equation norm
    // then decides.
    const double noise = 64.0 * std::numeric_limits<double>::epsilon() *
                         std::max(std::abs(f), 1e-300);
    double t = 1.0;
    for (int h = 0; h <= opts_.step_halving_max; ++h, t *= 0.5) {
      const Coefficients cand = beta + t * dir;
      if (!cand.allFinite()) continue;
      const double fc = detail::objective(view_, cand, lambda_);
      if (!std::isfinite(fc)) continue;
      if (fc < f - noise) {
        accept(beta, f, g, cand, fc);
        return true;
      }
      if (fc <= f + noise) {
        Vector gc = detail::equation(view_, cand, lambda_);
        if (gc.norm() < g_norm) {
          beta = cand;
          f = fc;
          g = std::move(gc);
          return true;
        }
      }
    }
    return false;
  }

  void accept(Coefficients& beta, double& f, Vector& g, const Coefficients& cand,
              double fc) const {
    beta = cand;
    f = fc;
    g = detail::equation(view_, beta, lambda_);
  }

  // Every fitted probability already matches its observed proportion to
  // rounding: the data are separated and the minimum sits at infinity.
  bool perfect_fit(const Coefficients& beta) const {
    const Vector score = view_.x * beta;
    for (Eigen::Index i = 0; i < score.size(); ++i) {
      const double t = view_.trials_at(i);
      const double p = link_probability(score(i));
      if (std::abs(t * p - view_.successes(i)) > 1e-6 * t) return false;
    }
    return true;
  }


  void check_separation(const Coefficients& beta, bool force = false) const {
    const double size = beta.lpNorm<Eigen::Infinity>();
    if (force || size > opts_.separation_threshold) {
      throw Separation("coefficients diverge (|beta|_inf = " + std::to_string(size) +
                       "); the responses are separated by the covariates");
    }
  }

  const BinomialView& view_;
  TuningParameter lambda_;
  const FitOptions& opts_;
  double tol_ = 0.0;
};

Coefficients perturbed(const Coefficients& beta) {
  Coefficients out = beta;
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    const double sign = (i % 2 == 0) ? 1.0 : -1.0;
    out(i) += sign * 0.1 * (1.0 + std::abs(beta(i)));
  }
  return out;
}

Solution best_of(std::optional<Solution> a, std::optional<Solution> b) {
  if (!a) return *b;
  if (!b) return *a;
  if (a->local_minimum != b->local_minimum) return a->local_minimum ? *a : *b;
  return b->objective < a->objective ? *b : *a;
}

Solution solve_from(const Solver& solver, const Coefficients& start,
                    const std::optional<Coefficients>& alternative) {
  std::optional<Solution> best;
  std::exception_ptr first_error;
  auto attempt = [&](const Coefficients& init) {
    try {
      best = best_of(best, solver.solve(init));
    } catch (const Error&) {
      if (!first_error) first_error = std::current_exception();
    }
  };
  attempt(start);
  if (alternative && !alternative->isApprox(start)) attempt(*alternative);
  if (best && !best->local_minimum) attempt(perturbed(best->beta));
  if (!best) std::rethrow_exception(first_error);
  return *best;
}

FitResult finish(const BinomialView& view, TuningParameter lambda,
                 const FitOptions& opts, const Solver& solver, Solution s) {
  FitResult r;
  r.beta_hat = std::move(s.beta);
  r.lambda = lambda;
  r.j_hat = detail::j_matrix(view, r.beta_hat, lambda);
  r.k_hat = detail::k_matrix(view, r.beta_hat, lambda);
  // A stationary point on the way out: the objective keeps falling along
  // the fitted ray past the separation threshold.
  auto diverges = [&] {
    const double noise = 64.0 * std::numeric_limits<double>::epsilon() *
                         std::max(std::abs(s.objective), 1e-300);
    Coefficients b = r.beta_hat;
    if (!(b.lpNorm<Eigen::Infinity>() > 0.0)) return false;
    double f = s.objective;
    for (bool first = true; b.lpNorm<Eigen::Infinity>() <= opts.separation_threshold;
         first = false) {
      b *= 2.0;
      const double fb = detail::objective(view, b, lambda);
      if (first ? !(fb < f - noise) : !(fb <= f + noise)) return false;
      f = std::min(f, fb);
    }
    return true;
  };
  auto separated = [&] {
    std::ostringstream msg;
    msg << "objective keeps decreasing along the fitted direction past |beta|_inf = "
        << opts.separation_threshold << " (fitted |beta|_inf = "
        << r.beta_hat.lpNorm<Eigen::Infinity>() << "); no finite minimizer";
    return Separation(msg.str());
  };
  if (diverges()) throw separated();
  r.sigma_hat = sandwich_covariance(r.j_hat, r.k_hat, opts.condition_bound);
  r.converged = true;
  r.iterations = s.iterations;
  r.grad_norm = s.grad_norm;
  r.grad_tolerance = solver.tolerance();
  r.objective = s.objective;
  r.sample_size = view.total;
  r.local_minimum = s.local_minimum;
  return r;
}

FitResult fit_view(const BinomialView& view, TuningParameter lambda,
                   const FitOptions& opts, const std::optional<Coefficients>& warm) {
  opts.validate();
  const Solver solver(view, lambda, opts);
  const Coefficients zero = Coefficients::Zero(view.x.cols());
  if (opts.init) {
    detail::check_dims(view, *opts.init);
    return finish(view, lambda, opts, solver, solve_from(solver, *opts.init, {}));
  }
  if (lambda.is_mle()) {
    return finish(view, lambda, opts, solver, solve_from(solver, zero, {}));
  }
  Coefficients start = zero;
  if (warm) {
    start = *warm;
  } else {
    try {
      start = Solver(view, TuningParameter(0.0), opts).solve(zero).beta;
    } catch (const Error&) {
      start = zero;
    }
  }
  return finish(view, lambda, opts, solver, solve_from(solver, start, zero));
}

std::vector<FitResult> fit_path(const BinomialView& view,
                                const std::vector<TuningParameter>& lambdas,
                                const FitOptions& opts) {
  std::vector<std::size_t> order(lambdas.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return lambdas[a].value() < lambdas[b].value();
  });
  std::vector<FitResult> out(lambdas.size());
  std::optional<Coefficients> warm;
  for (std::size_t idx : order) {
    out[idx] = fit_view(view, lambdas[idx], opts, warm);
    if (!opts.init) warm = out[idx].beta_hat;
  }
  return out;
}

}  // namespace

void FitOptions::validate() const {
  if (max_iterations < 1) throw InvalidArgument("max_iterations must be >= 1");
  if (grad_tolerance && !(*grad_tolerance > 0.0)) {
    throw InvalidArgument("grad_tolerance must be > 0");
  }
  if (step_halving_max < 0) throw InvalidArgument("step_halving_max must be >= 0");
  if (!(separation_threshold > 0.0)) {
    throw InvalidArgument("separation_threshold must be > 0");
  }
  if (!(condition_bound > 1.0)) throw InvalidArgument("condition_bound must be > 1");
}

FitResult fit_mdpde(const Dataset& data, TuningParameter lambda,
                    const FitOptions& opts) {
  data.require_estimable();
  return fit_view(detail::view_of(data), lambda, opts, {});
}

FitResult fit_mdpde_grouped(const GroupedDataset& data, TuningParameter lambda,
                            const FitOptions& opts) {
  data.require_estimable();
  return fit_view(detail::view_of(data), lambda, opts, {});
}

std::vector<FitResult> fit_mdpde_path(const Dataset& data,
                                      const std::vector<TuningParameter>& lambdas,
                                      const FitOptions& opts) {
  data.require_estimable();
  return fit_path(detail::view_of(data), lambdas, opts);
}

std::vector<FitResult> fit_mdpde_grouped_path(
    const GroupedDataset& data, const std::vector<TuningParameter>& lambdas,
    const FitOptions& opts) {
  data.require_estimable();
  return fit_path(detail::view_of(data), lambdas, opts);
}

Matrix estimate_j(const Dataset& data, const Coefficients& beta,
                  TuningParameter lambda) {
  return detail::j_matrix(detail::view_of(data), beta, lambda);
}

Matrix estimate_k(const Dataset& data, const Coefficients& beta,
                  TuningParameter lambda) {
  return detail::k_matrix(detail::view_of(data), beta, lambda);
}

Matrix estimate_j_grouped(const GroupedDataset& data, const Coefficients& beta,
                          TuningParameter lambda) {
  return detail::j_matrix(detail::view_of(data), beta, lambda);
}

Matrix estimate_k_grouped(const GroupedDataset& data, const Coefficients& beta,
                          TuningParameter lambda) {
  return detail::k_matrix(detail::view_of(data), beta, lambda);
}

Matrix sandwich_covariance(const Matrix& j, const Matrix& k, double condition_bound) {
  if (j.rows() != j.cols() || k.rows() != k.cols() || j.rows() != k.rows()) {
    throw DimensionMismatch("J and K must be square matrices of the same size");
  }
  if (!j.allFinite() || !k.allFinite()) {
    throw SingularInformation("J or K has non-finite entries");
  }
  const detail::SymmetricSolver js(detail::symmetrized(j));
  if (!(js.condition() <= condition_bound)) {
    throw SingularInformation("J is numerically singular (condition number " +
                              std::to_string(js.condition()) + ")");
  }
  const Matrix jk = js.solve(k);
  return detail::symmetrized(js.solve(Matrix(jk.transpose())));
}

Information empirical_information(const Dataset& data, const Coefficients& beta,
                                  TuningParameter lambda) {
  Information info;
  info.j = estimate_j(data, beta, lambda);
  info.k = estimate_k(data, beta, lambda);
  info.sigma = sandwich_covariance(info.j, info.k);
  return info;
}

}  // namespace dpdlogit
