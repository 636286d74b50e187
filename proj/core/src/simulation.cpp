#include "dpdlogit/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <string>
#include <thread>

namespace dpdlogit {
namespace {

SimulationDesign default_design(double b1, double b2) {
  Matrix m = Matrix::Zero(3, 2);
  m(1, 0) = 1.0;
  m(2, 1) = 1.0;
  return SimulationDesign{
      Coefficients{{0.0, 1.0, 1.0}},
      {20, 40, 60, 80, 100},
      1000,
      0.05,
      {TuningParameter(0.0), TuningParameter(0.1), TuningParameter(0.5),
       TuningParameter(1.0)},
      LinearHypothesis(m, Vector{{b1, b2}}),
      20160601,
      0,
  };
}

// Outcome of one replication: per λ, 1 = reject, 0 = accept, -1 = failed fit.
using Outcome = std::vector<signed char>;

Outcome run_replication(const SimulationDesign& design,
                        const std::optional<ContaminationSpec>& spec, long n,
                        long replication) {
  Philox rng = replication_stream(design, n, replication);
  Dataset data = generate_dataset(design, n, rng);
  if (spec) data = contaminate(data, *spec, rng);
  Outcome out(design.lambda_grid.size(), -1);
  for (std::size_t l = 0; l < design.lambda_grid.size(); ++l) {
    try {
      const FitResult fit = fit_mdpde(data, design.lambda_grid[l]);
      const WaldTestResult t = wald_statistic(fit, design.hypothesis, design.alpha);
      out[l] = t.reject ? 1 : 0;
    } catch (const Error&) {
      out[l] = -1;
    }
  }
  return out;
}

SimulationReport run_experiment(const SimulationDesign& design,
                                const std::optional<ContaminationSpec>& spec) {
  design.validate();
  if (spec) spec->validate(design.k());
  int threads = design.threads > 0
                    ? design.threads
                    : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  threads = std::min(threads, design.replications);

  SimulationReport report;
  for (long n : design.n_grid) {
    std::vector<Outcome> outcomes(static_cast<std::size_t>(design.replications));
    std::atomic<long> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    auto worker = [&]() {
      try {
        for (long r = next++; r < design.replications && !failed; r = next++) {
          outcomes[static_cast<std::size_t>(r)] = run_replication(design, spec, n, r);
        }
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    };
    if (threads <= 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    for (std::size_t l = 0; l < design.lambda_grid.size(); ++l) {
      SimulationCell cell;
      cell.lambda = design.lambda_grid[l].value();
      cell.n = n;
      for (const Outcome& o : outcomes) {
        if (o[l] < 0) {
          ++cell.failures;
        } else {
          ++cell.successes;
          cell.rejections += o[l];
        }
      }
      if (static_cast<double>(cell.failures) >
          kMaxFailureFraction * design.replications) {
        throw SimulationFailure(
            std::to_string(cell.failures) + " of " +
            std::to_string(design.replications) + " replications failed at lambda = " +
            std::to_string(cell.lambda) + ", n = " + std::to_string(n));
      }
      if (cell.successes > 0) {
        cell.rate = static_cast<double>(cell.rejections) / cell.successes;
        cell.standard_error = std::sqrt(cell.rate * (1.0 - cell.rate) / cell.successes);
      }
      report.cells.push_back(cell);
    }
  }
  return report;
}

}  // namespace

void SimulationDesign::validate() const {
  check_coefficients(beta_true);
  if (beta_true.size() < 2) throw InvalidArgument("design needs at least one covariate");
  if (hypothesis.dim() != beta_true.size()) {
    throw DimensionMismatch("hypothesis does not match the number of coefficients");
  }
  if (replications < 1) throw InvalidArgument("replications must be >= 1");
  if (n_grid.empty()) throw InvalidArgument("n_grid is empty");
  for (long n : n_grid) {
    if (n <= k() + 1) {
      throw InvalidArgument("sample size " + std::to_string(n) +
                            " must exceed the number of coefficients");
    }
  }
  if (lambda_grid.empty()) throw InvalidArgument("lambda_grid is empty");
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("alpha must lie in (0, 1)");
  if (threads < 0) throw InvalidArgument("threads must be >= 0");
}

SimulationDesign SimulationDesign::level_default() { return default_design(1.0, 1.0); }

SimulationDesign SimulationDesign::power_default() { return default_design(0.0, 0.0); }

void ContaminationSpec::validate(Eigen::Index k) const {
  if (!(fraction >= 0.0 && fraction < 0.5)) {
    throw InvalidArgument("contamination fraction must lie in [0, 0.5)");
  }
  if (leverage_mean.size() != k) {
    throw DimensionMismatch("leverage mean has " + std::to_string(leverage_mean.size()) +
                            " entries, expected " + std::to_string(k));
  }
  if (!leverage_mean.allFinite()) throw InvalidArgument("leverage mean must be finite");
  if (!(leverage_sd > 0.0) || !std::isfinite(leverage_sd)) {
    throw InvalidArgument("leverage sd must be positive");
  }
}

long ContaminationSpec::rows_replaced(long n) const {
  // The small offset keeps products such as 0.03 * 100 from rounding up.
  return static_cast<long>(std::ceil(fraction * static_cast<double>(n) - 1e-9));
}

ContaminationSpec ContaminationSpec::leverage_default() {
  return {0.03, Vector{{5.0, 5.0}}, 0.01, FlipRule::kSetZero};
}

const SimulationCell& SimulationReport::at(double lambda, long n) const {
  for (const SimulationCell& c : cells) {
    if (c.lambda == lambda && c.n == n) return c;
  }
  throw InvalidArgument("no simulation cell for lambda = " + std::to_string(lambda) +
                        ", n = " + std::to_string(n));
}

Philox replication_stream(const SimulationDesign& design, long n, long replication) {
  return Philox(design.seed, static_cast<std::uint64_t>(n),
                static_cast<std::uint64_t>(replication));
}

Dataset generate_dataset(const SimulationDesign& design, long n, Philox& rng) {
  check_coefficients(design.beta_true);
  const Eigen::Index k = design.k();
  if (n <= k + 1) throw InvalidArgument("n must exceed the number of coefficients");
  Matrix x(n, k + 1);
  Vector y(n);
  for (long i = 0; i < n; ++i) {
    x(i, 0) = 1.0;
    for (Eigen::Index j = 1; j <= k; ++j) x(i, j) = rng.normal();
    const double p = link_probability(x.row(i).dot(design.beta_true));
    y(i) = rng.uniform() < p ? 1.0 : 0.0;
  }
  return Dataset(std::move(x), std::move(y));
}

Dataset contaminate(const Dataset& data, const ContaminationSpec& spec, Philox& rng) {
  spec.validate(data.k());
  const long n = static_cast<long>(data.n());
  const long m = std::min(spec.rows_replaced(n), n);
  if (m == 0) return data;
  Matrix x = data.x();
  Vector y = data.y();
  for (long i = n - m; i < n; ++i) {
    for (Eigen::Index j = 0; j < data.k(); ++j) {
      x(i, j + 1) = spec.leverage_mean(j) + spec.leverage_sd * rng.normal();
    }
    switch (spec.flip_rule) {
      case FlipRule::kSetZero:
        y(i) = 0.0;
        break;
    }
  }
  return Dataset(std::move(x), std::move(y));
}

SimulationReport run_level_experiment(const SimulationDesign& design,
                                      const std::optional<ContaminationSpec>& spec) {
  design.validate();
  const double gap = design.hypothesis.residual(design.beta_true).norm();
  if (gap > 1e-10) {
    throw InvalidArgument("level experiments need a hypothesis that holds at beta_true");
  }
  return run_experiment(design, spec);
}

SimulationReport run_power_experiment(const SimulationDesign& design,
                                      const std::optional<ContaminationSpec>& spec) {
  return run_experiment(design, spec);
}

}  // namespace dpdlogit
