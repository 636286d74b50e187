#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dpdlogit/hypothesis.hpp"
#include "dpdlogit/random.hpp"

namespace dpdlogit {

struct SimulationDesign {
  Coefficients beta_true;
  std::vector<long> n_grid;
  int replications = 1000;
  double alpha = 0.05;
  std::vector<TuningParameter> lambda_grid;
  LinearHypothesis hypothesis;
  std::uint64_t seed = 20160601;
  /// Worker threads; 0 uses the available hardware parallelism.
  int threads = 0;

  /// Number of covariates k.
  Eigen::Index k() const noexcept { return beta_true.size() - 1; }
  void validate() const;

  /// β = (0,1,1), standard normal covariates, n in {20,...,100}, 1000
  /// replications, λ in {0, 0.1, 0.5, 1}, H0: (β1, β2) = (1, 1).
  static SimulationDesign level_default();
  /// As level_default with H0: (β1, β2) = (0, 0).
  static SimulationDesign power_default();
};

enum class FlipRule {
  /// Every contaminated response is set to 0.
  kSetZero,
};

struct ContaminationSpec {
  double fraction = 0.03;
  Vector leverage_mean;
  double leverage_sd = 0.01;
  FlipRule flip_rule = FlipRule::kSetZero;

  void validate(Eigen::Index k) const;
  /// Number of rows replaced in a sample of size n: ⌈fraction·n⌉.
  long rows_replaced(long n) const;

  /// 3% of rows moved to N((5,5), 0.01² I) with responses 0.
  static ContaminationSpec leverage_default();
};

struct SimulationCell {
  double lambda = 0.0;
  long n = 0;
  long rejections = 0;
  long successes = 0;
  long failures = 0;
  /// rejections / successes.
  double rate = 0.0;
  /// sqrt(rate (1 - rate) / successes).
  double standard_error = 0.0;
};

struct SimulationReport {
  std::vector<SimulationCell> cells;

  const SimulationCell& at(double lambda, long n) const;
};

/// Standard normal covariates with y ~ Bernoulli(π(x^T β_true)).
Dataset generate_dataset(const SimulationDesign& design, long n, Philox& rng);

/// Replaces the last ⌈fraction·n⌉ rows by leverage points.
Dataset contaminate(const Dataset& data, const ContaminationSpec& spec, Philox& rng);

/// The generator used for replication `replication` at sample size n.
Philox replication_stream(const SimulationDesign& design, long n, long replication);

/// Requires the hypothesis to hold at beta_true.
SimulationReport run_level_experiment(const SimulationDesign& design,
                                      const std::optional<ContaminationSpec>& spec = {});

SimulationReport run_power_experiment(const SimulationDesign& design,
                                      const std::optional<ContaminationSpec>& spec = {});

/// Fraction of failed replications above which an experiment aborts.
inline constexpr double kMaxFailureFraction = 0.10;

}  // namespace dpdlogit
