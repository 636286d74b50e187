#include "cli.hpp"

#include <ostream>

#include "CLI11.hpp"
#include "commands.hpp"

namespace dpdlogit::cli {
namespace {

void add_data(CLI::App& sub, DataOptions& d) {
  auto* data = sub.add_option("--data", d.bundled,
                              "bundled dataset: vasoconstriction, lymphatic_cancer, leukemia");
  auto* csv = sub.add_option("--csv", d.csv, "CSV file (y,x1,... or trials,successes,x1,...)");
  data->excludes(csv);
  sub.add_option("--csv-format", d.csv_format, "auto, bernoulli or grouped")
      ->check(CLI::IsMember({"auto", "bernoulli", "grouped"}))
      ->needs(csv);
  sub.add_option("--drop", d.drop, "1-based rows to remove")->delimiter(',');
}

void add_model(CLI::App& sub, ModelOptions& m) {
  add_data(sub, m.data);
  sub.add_option("--beta0", m.beta0, "coefficients at the null, intercept first")
      ->delimiter(',');
  sub.add_option("--law-mean", m.law_mean, "covariate means for the normal law")
      ->delimiter(',');
  sub.add_option("--law-sd", m.law_sd, "covariate sds for the normal law")->delimiter(',');
}

void add_power_flags(CLI::App& sub, PowerCommand& p) {
  add_model(sub, p.model);
  sub.add_option("--sigma-source", p.sigma_source, "pilot or normal")
      ->check(CLI::IsMember({"pilot", "normal"}));
  sub.add_option("--lambda", p.lambda, "tuning parameter");
  sub.add_option("--hyp", p.hyp, "constraints such as \"b1=0,b2=0\"")->required();
  sub.add_option("--alpha", p.alpha, "nominal level");
  sub.add_option("--beta-star", p.beta_star, "fixed alternative")->delimiter(',');
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Robust Wald-type tests for logistic regression", "dpdlogit"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "table";
  app.add_option("--format", format, "table or json")->check(CLI::IsMember({"table", "json"}));

  FitCommand fit;
  auto* fit_cmd = app.add_subcommand("fit", "fit the estimator over a lambda grid");
  add_data(*fit_cmd, fit.data);
  fit_cmd->add_option("--lambda", fit.lambdas, "tuning parameters")->delimiter(',');

  TestCommand test;
  auto* test_cmd = app.add_subcommand("test", "Wald-type test of a linear hypothesis");
  add_data(*test_cmd, test.data);
  test_cmd->add_option("--lambda", test.lambdas, "tuning parameters")->delimiter(',');
  test_cmd->add_option("--hyp", test.hyp, "constraints such as \"b1=0,b2=0\"")->required();
  test_cmd->add_option("--alpha", test.alpha, "nominal level");

  InfluenceCommand infl;
  auto* infl_cmd = app.add_subcommand("influence", "influence functions over a grid");
  add_model(*infl_cmd, infl.model);
  infl_cmd->add_option("--lambda", infl.lambda, "tuning parameter");
  infl_cmd->add_option("--quantity", infl.quantity, "if, if2 or pif")
      ->check(CLI::IsMember({"if", "if2", "pif"}));
  infl_cmd->add_option("--y-t", infl.y_t, "response at the contamination point")
      ->check(CLI::IsMember({0.0, 1.0}));
  infl_cmd->add_option("--at", infl.at, "covariates of the base point")->delimiter(',');
  infl_cmd->add_option("--x1", infl.x1, "lo:hi:count for the first covariate");
  infl_cmd->add_option("--x2", infl.x2, "lo:hi:count for the second covariate");
  infl_cmd->add_option("--hyp", infl.hyp, "constraints for if2 and pif");
  infl_cmd->add_option("--d", infl.d, "contiguous direction for pif")->delimiter(',');
  infl_cmd->add_option("--alpha", infl.alpha, "nominal level");

  PowerCommand power;
  auto* power_cmd = app.add_subcommand("power", "asymptotic power");
  add_power_flags(*power_cmd, power);
  power_cmd->add_option("--d", power.d, "contiguous direction")->delimiter(',');
  power_cmd->add_option("--n", power.n, "sample sizes for a fixed alternative")
      ->delimiter(',');
  power_cmd->add_option("--epsilon", power.epsilon, "contamination proportions")
      ->delimiter(',');
  power_cmd->add_option("--x-t", power.x_t, "covariates of the contamination point")
      ->delimiter(',');
  power_cmd->add_option("--y-t", power.y_t, "response at the contamination point")
      ->check(CLI::IsMember({0.0, 1.0}));

  PowerCommand size;
  auto* size_cmd = app.add_subcommand("samplesize", "sample size for a target power");
  add_power_flags(*size_cmd, size);
  size_cmd->add_option("--target-power", size.target_power, "required power");

  SimulateCommand sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo level or power");
  sim_cmd->add_option("--mode", sim.mode, "level or power")
      ->check(CLI::IsMember({"level", "power"}));
  sim_cmd->add_option("--n", sim.n, "sample sizes")->delimiter(',');
  sim_cmd->add_option("--lambda", sim.lambdas, "tuning parameters")->delimiter(',');
  sim_cmd->add_option("--reps", sim.reps, "replications")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--seed", sim.seed, "random seed");
  sim_cmd->add_option("--threads", sim.threads, "worker threads, 0 for all cores")
      ->check(CLI::NonNegativeNumber);
  sim_cmd->add_option("--alpha", sim.alpha, "nominal level");
  sim_cmd->add_option("--beta-true", sim.beta_true, "true coefficients")->delimiter(',');
  sim_cmd->add_option("--hyp", sim.hyp, "constraints tested");
  sim_cmd->add_option("--contaminate", sim.contaminate, "fraction of rows replaced");
  sim_cmd->add_option("--mu", sim.mu, "leverage point mean")->delimiter(',');
  sim_cmd->add_option("--sd", sim.sd, "leverage point sd");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << "run with --help for usage\n";
    return 2;
  }

  const Format fmt = format == "json" ? Format::kJson : Format::kTable;
  try {
    CommandResult r;
    if (fit_cmd->parsed()) {
      r = run_fit(fit);
    } else if (test_cmd->parsed()) {
      r = run_test(test);
    } else if (infl_cmd->parsed()) {
      r = run_influence(infl);
    } else if (power_cmd->parsed()) {
      r = run_power(power);
    } else if (size_cmd->parsed()) {
      r = run_samplesize(size);
    } else {
      r = run_simulate(sim);
    }
    print_report(out, r.report, fmt);
    for (const std::string& m : r.messages) err << "error: " << m << "\n";
    return r.exit_code;
  } catch (...) {
    std::string message;
    const int code = exit_code_for_current_exception(message);
    err << "error: " << message << "\n";
    return code;
  }
}

}  // namespace dpdlogit::cli
