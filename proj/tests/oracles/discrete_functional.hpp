#pragma once

// The minimum DPD functional on a distribution with finitely many atoms.
// Ψ is written out from its closed form and the root found by Newton with a
// finite-difference Jacobian, so nothing here calls into the library.

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "finite_diff.hpp"

namespace oracle {

struct Atom {
  Eigen::VectorXd x;
  double y;
  double mass;
};

inline double naive_pi(double s) { return 1.0 / (1.0 + std::exp(-s)); }

inline Eigen::VectorXd naive_psi(const Eigen::VectorXd& x, double y,
                                 const Eigen::VectorXd& beta, double lambda) {
  const double s = x.dot(beta);
  const double es = std::exp(s);
  const double f = (std::exp(lambda * s) + es) * (es - y * (1.0 + es)) /
                   std::pow(1.0 + es, lambda + 2.0);
  return f * x;
}

/// Joint law of (x, y) with x uniform over `xs` and y from the logistic model.
inline std::vector<Atom> model_atoms(const std::vector<Eigen::VectorXd>& xs,
                                     const Eigen::VectorXd& beta) {
  std::vector<Atom> out;
  const double px = 1.0 / static_cast<double>(xs.size());
  for (const auto& x : xs) {
    const double p = naive_pi(x.dot(beta));
    out.push_back({x, 1.0, px * p});
    out.push_back({x, 0.0, px * (1.0 - p)});
  }
  return out;
}

/// (1 - eps) G + eps δ_(x_t, y_t).
inline std::vector<Atom> mixed(const std::vector<Atom>& g, const Eigen::VectorXd& x_t,
                               double y_t, double eps) {
  std::vector<Atom> out;
  for (const Atom& a : g) out.push_back({a.x, a.y, (1.0 - eps) * a.mass});
  out.push_back({x_t, y_t, eps});
  return out;
}

inline Eigen::VectorXd expected_psi(const std::vector<Atom>& g, const Eigen::VectorXd& beta,
                                    double lambda) {
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(beta.size());
  for (const Atom& a : g) acc += a.mass * naive_psi(a.x, a.y, beta, lambda);
  return acc;
}

inline Eigen::MatrixXd functional_j(const std::vector<Atom>& g, const Eigen::VectorXd& beta,
                                    double lambda) {
  return central_jacobian(
      [&](const Eigen::VectorXd& b) { return expected_psi(g, b, lambda); }, beta, 1e-6);
}

inline Eigen::MatrixXd functional_k(const std::vector<Atom>& g, const Eigen::VectorXd& beta,
                                    double lambda) {
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(beta.size(), beta.size());
  for (const Atom& a : g) {
    const Eigen::VectorXd p = naive_psi(a.x, a.y, beta, lambda);
    acc += a.mass * p * p.transpose();
  }
  return acc;
}

inline Eigen::VectorXd solve_functional(const std::vector<Atom>& g, double lambda,
                                        Eigen::VectorXd beta) {
  for (int it = 0; it < 100; ++it) {
    const Eigen::VectorXd f = expected_psi(g, beta, lambda);
    if (f.cwiseAbs().maxCoeff() < 1e-15) return beta;
    const Eigen::MatrixXd j = functional_j(g, beta, lambda);
    const Eigen::VectorXd step = j.fullPivLu().solve(f);
    beta -= step;
    if (step.cwiseAbs().maxCoeff() < 1e-14) return beta;
  }
  if (expected_psi(g, beta, lambda).cwiseAbs().maxCoeff() < 1e-13) return beta;
  throw std::runtime_error("discrete functional did not converge");
}

}  // namespace oracle
