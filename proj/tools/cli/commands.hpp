#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "output.hpp"

namespace dpdlogit::cli {

/// Flag combinations that make no sense; exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Per-λ failures do not abort a grid; the report lists them and the
/// command exits with the code of the first one.
struct CommandResult {
  Report report;
  int exit_code = 0;
  std::vector<std::string> messages;
};

struct DataOptions {
  std::string bundled;
  std::string csv;
  std::string csv_format = "auto";
  std::vector<long> drop;

  bool given() const { return !bundled.empty() || !csv.empty(); }
};

struct ModelOptions {
  DataOptions data;
  std::vector<double> beta0;
  std::vector<double> law_mean;
  std::vector<double> law_sd;
};

struct FitCommand {
  DataOptions data;
  std::vector<double> lambdas{0.0};
};

struct TestCommand {
  DataOptions data;
  std::vector<double> lambdas{0.0};
  std::string hyp;
  double alpha = 0.05;
};

struct InfluenceCommand {
  ModelOptions model;
  double lambda = 0.0;
  std::string quantity = "if";
  double y_t = 0.0;
  std::vector<double> at;
  std::string x1;
  std::string x2;
  std::string hyp;
  std::vector<double> d;
  double alpha = 0.05;
};

struct PowerCommand {
  ModelOptions model;
  std::string sigma_source;
  double lambda = 0.0;
  std::string hyp;
  double alpha = 0.05;
  std::vector<double> beta_star;
  std::vector<double> d;
  std::vector<double> n;
  std::vector<double> epsilon{0.0};
  std::vector<double> x_t;
  double y_t = 0.0;
  double target_power = 0.8;
};

struct SimulateCommand {
  std::string mode = "level";
  std::vector<long> n;
  std::vector<double> lambdas;
  int reps = 1000;
  std::uint64_t seed = 20160601;
  int threads = 0;
  double alpha = 0.05;
  std::vector<double> beta_true;
  std::string hyp;
  std::optional<double> contaminate;
  std::vector<double> mu;
  double sd = 0.01;
};

CommandResult run_fit(const FitCommand& c);
CommandResult run_test(const TestCommand& c);
CommandResult run_influence(const InfluenceCommand& c);
CommandResult run_power(const PowerCommand& c);
CommandResult run_samplesize(const PowerCommand& c);
CommandResult run_simulate(const SimulateCommand& c);

/// Exit code for the exception in flight.
int exit_code_for_current_exception(std::string& message);

}  // namespace dpdlogit::cli
