#include "commands.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <variant>

#include <dpdlogit/dpdlogit.hpp>

namespace dpdlogit::cli {
namespace {

std::optional<double> env_number(const char* name) {
  const char* raw = std::getenv(name);
  if (!raw || !*raw) return std::nullopt;
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(raw, &end);
  if (errno != 0 || *end != '\0' || !std::isfinite(v)) {
    throw UsageError(std::string(name) + " is not a number: '" + raw + "'");
  }
  return v;
}

FitOptions fit_options() {
  FitOptions o;
  if (auto v = env_number("DPDLOGIT_GRAD_TOL")) o.grad_tolerance = *v;
  if (auto v = env_number("DPDLOGIT_MAX_ITER")) o.max_iterations = static_cast<int>(*v);
  if (auto v = env_number("DPDLOGIT_STEP_HALVING")) o.step_halving_max = static_cast<int>(*v);
  if (auto v = env_number("DPDLOGIT_SEPARATION_THRESHOLD")) o.separation_threshold = *v;
  if (auto v = env_number("DPDLOGIT_CONDITION_BOUND")) o.condition_bound = *v;
  o.validate();
  return o;
}

Vector to_vector(const std::vector<double>& v) {
  return Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

struct Loaded {
  std::string name;
  AnyDataset data;
  std::vector<std::string> covariates;
};

CsvFormat csv_format(const std::string& s) {
  if (s == "auto") return CsvFormat::kAuto;
  if (s == "bernoulli") return CsvFormat::kBernoulli;
  if (s == "grouped") return CsvFormat::kGrouped;
  throw UsageError("unknown csv format '" + s + "'");
}

Loaded load(const DataOptions& o) {
  if (!o.given()) throw UsageError("a data source is required (--data or --csv)");
  if (!o.bundled.empty()) {
    NamedDataset ds = load_bundled(o.bundled);
    if (!o.drop.empty()) ds = drop_rows(ds, o.drop);
    return {ds.name, ds.data, ds.covariate_names};
  }
  CsvTable t = load_csv(o.csv, csv_format(o.csv_format));
  if (auto* bern = std::get_if<Dataset>(&t.data)) {
    std::vector<std::string> names(t.header.begin() + 1, t.header.end());
    if (o.drop.empty()) return {o.csv, *bern, names};
    NamedDataset ds{o.csv, *bern, names, o.csv, {}};
    ds = drop_rows(ds, o.drop);
    return {o.csv, ds.data, ds.covariate_names};
  }
  if (!o.drop.empty()) throw UsageError("--drop applies to Bernoulli data only");
  std::vector<std::string> names(t.header.begin() + 2, t.header.end());
  return {o.csv, t.data, names};
}

Eigen::Index dim_of(const AnyDataset& d) {
  return std::visit([](const auto& x) { return x.dim(); }, d);
}

double size_of(const AnyDataset& d) {
  if (const auto* b = std::get_if<Dataset>(&d)) return static_cast<double>(b->n());
  return std::get<GroupedDataset>(d).total_trials();
}

FitResult fit(const AnyDataset& d, double lambda) {
  const FitOptions opts = fit_options();
  const TuningParameter tp(lambda);
  if (const auto* b = std::get_if<Dataset>(&d)) return fit_mdpde(*b, tp, opts);
  return fit_mdpde_grouped(std::get<GroupedDataset>(d), tp, opts);
}

std::vector<std::string> term_names(const std::vector<std::string>& covariates) {
  std::vector<std::string> out{"intercept"};
  out.insert(out.end(), covariates.begin(), covariates.end());
  return out;
}

void check_lambdas(const std::vector<double>& lambdas) {
  if (lambdas.empty()) throw UsageError("--lambda needs at least one value");
  for (double l : lambdas) TuningParameter{l};
}

Json fit_json(const FitResult& f) {
  Vector se = (f.sigma_hat.diagonal() / f.sample_size).cwiseSqrt();
  return Json{{"lambda", f.lambda.value()},
              {"beta", to_json(f.beta_hat)},
              {"std_error", to_json(se)},
              {"j", to_json(f.j_hat)},
              {"k", to_json(f.k_hat)},
              {"sigma", to_json(f.sigma_hat)},
              {"converged", f.converged},
              {"iterations", f.iterations},
              {"grad_norm", f.grad_norm},
              {"grad_tolerance", f.grad_tolerance},
              {"objective", f.objective},
              {"sample_size", f.sample_size},
              {"local_minimum", f.local_minimum}};
}

// Runs `body` for each λ; a failure is recorded and the grid continues.
template <typename Body>
void over_lambdas(const std::vector<double>& lambdas, CommandResult& r, Json& errors,
                  Body body) {
  for (double l : lambdas) {
    try {
      body(l);
    } catch (...) {
      std::string msg;
      const int code = exit_code_for_current_exception(msg);
      if (code == 2) throw;
      if (r.exit_code == 0) r.exit_code = code;
      r.messages.push_back("lambda " + format_number(l) + ": " + msg);
      errors.push_back(Json{{"lambda", l}, {"exit_code", code}, {"message", msg}});
    }
  }
}

// ---------------------------------------------------------------------------
// Model context shared by influence, power and samplesize.

CovariateLaw law_for(const ModelOptions& m, Eigen::Index k) {
  CovariateLaw law = CovariateLaw::standard_normal(k);
  if (!m.law_mean.empty()) law.mean = to_vector(m.law_mean);
  if (!m.law_sd.empty()) law.sd = to_vector(m.law_sd);
  if (law.mean.size() != k || law.sd.size() != k) {
    throw UsageError("--law-mean and --law-sd need " + std::to_string(k) + " values");
  }
  law.validate();
  return law;
}

struct Model {
  Coefficients beta0;
  Matrix j;
  Matrix sigma;
  std::string source;
};

// Pilot: fitted β̂ and its Ĵ, Σ̂ (or Ĵ, Σ̂ at a given β). Normal: population
// quantities at the given β under the covariate law.
Model model_for(const ModelOptions& m, double lambda, const std::string& source,
                const std::vector<double>& beta_override = {}) {
  const TuningParameter tp(lambda);
  const std::vector<double>& beta = beta_override.empty() ? m.beta0 : beta_override;
  if (source == "pilot") {
    if (!m.data.given()) throw UsageError("pilot covariance needs --data or --csv");
    Loaded l = load(m.data);
    const auto* bern = std::get_if<Dataset>(&l.data);
    if (!bern) throw UsageError("pilot covariance needs Bernoulli data");
    if (beta.empty()) {
      const FitResult f = fit(l.data, lambda);
      return {f.beta_hat, f.j_hat, f.sigma_hat, "pilot"};
    }
    const Coefficients b = to_vector(beta);
    if (b.size() != bern->dim()) {
      throw DimensionMismatch("coefficient vector has " + std::to_string(b.size()) +
                              " entries, data have " + std::to_string(bern->dim()));
    }
    const Information info = empirical_information(*bern, b, tp);
    return {b, info.j, info.sigma, "pilot"};
  }
  if (source == "normal") {
    if (beta.empty()) throw UsageError("normal covariance needs coefficients (--beta0)");
    const Coefficients b = to_vector(beta);
    const Information info = population_information(b, tp, law_for(m, b.size() - 1));
    return {b, info.j, info.sigma, "normal"};
  }
  throw UsageError("unknown covariance source '" + source + "'");
}

std::string default_source(const ModelOptions& m, const std::string& given) {
  if (!given.empty()) return given;
  return m.data.given() ? "pilot" : "normal";
}

std::vector<double> parse_range(const std::string& text, const std::string& flag) {
  std::vector<double> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t colon = text.find(':', start);
    const std::string piece = text.substr(start, colon - start);
    char* end = nullptr;
    const double v = std::strtod(piece.c_str(), &end);
    if (piece.empty() || *end != '\0' || !std::isfinite(v)) {
      throw UsageError(flag + " expects lo:hi:count or a single value, got '" + text + "'");
    }
    parts.push_back(v);
    if (colon == std::string::npos) break;
    start = colon + 1;
  }
  if (parts.size() == 1) return parts;
  if (parts.size() != 3 || parts[2] < 1 || parts[2] != std::floor(parts[2])) {
    throw UsageError(flag + " expects lo:hi:count with an integer count >= 1");
  }
  const long count = static_cast<long>(parts[2]);
  std::vector<double> out;
  for (long i = 0; i < count; ++i) {
    out.push_back(count == 1 ? parts[0]
                             : parts[0] + (parts[1] - parts[0]) * static_cast<double>(i) /
                                              static_cast<double>(count - 1));
  }
  return out;
}

}  // namespace

int exit_code_for_current_exception(std::string& message) {
  try {
    throw;
  } catch (const UsageError& e) {
    message = e.what();
    return 2;
  } catch (const NonConvergence& e) {
    message = std::string("non-convergence: ") + e.what();
    return 3;
  } catch (const Separation& e) {
    message = std::string("separation: ") + e.what();
    return 3;
  } catch (const SeriesNotConverged& e) {
    message = std::string("series did not converge: ") + e.what();
    return 3;
  } catch (const SingularInformation& e) {
    message = std::string("singular information: ") + e.what();
    return 4;
  } catch (const SingularConstraintCovariance& e) {
    message = std::string("singular constraint covariance: ") + e.what();
    return 4;
  } catch (const SimulationFailure& e) {
    message = std::string("simulation failure: ") + e.what();
    return 5;
  } catch (const Error& e) {
    message = e.what();
    return 2;
  } catch (const std::exception& e) {
    message = std::string("internal error: ") + e.what();
    return 1;
  }
}

CommandResult run_fit(const FitCommand& c) {
  check_lambdas(c.lambdas);
  const Loaded l = load(c.data);
  const std::vector<std::string> terms = term_names(l.covariates);
  CommandResult r;
  Json fits = Json::array();
  Json errors = Json::array();
  Table coef{"coefficients", {"lambda", "term", "estimate", "std_error"}, {}};
  Table diag{"diagnostics",
             {"lambda", "iterations", "grad_norm", "objective", "local_minimum"},
             {}};
  over_lambdas(c.lambdas, r, errors, [&](double lambda) {
    const FitResult f = fit(l.data, lambda);
    const Json j = fit_json(f);
    for (std::size_t i = 0; i < terms.size(); ++i) {
      coef.rows.push_back({lambda, terms[i], j["beta"][i].get<double>(),
                           j["std_error"][i].get<double>()});
    }
    diag.rows.push_back({lambda, static_cast<long>(f.iterations), f.grad_norm, f.objective,
                         std::string(f.local_minimum ? "yes" : "no")});
    fits.push_back(j);
  });
  r.report.json = Json{{"command", "fit"},
                       {"dataset", l.name},
                       {"sample_size", size_of(l.data)},
                       {"terms", terms},
                       {"fits", fits},
                       {"errors", errors}};
  r.report.tables = {coef, diag};
  return r;
}

CommandResult run_test(const TestCommand& c) {
  check_lambdas(c.lambdas);
  if (c.hyp.empty()) throw UsageError("--hyp is required");
  detail::check_alpha(c.alpha);
  const Loaded l = load(c.data);
  const LinearHypothesis hyp = LinearHypothesis::parse(c.hyp, dim_of(l.data));
  CommandResult r;
  Json tests = Json::array();
  Json errors = Json::array();
  Table t{"wald tests", {"lambda", "statistic", "df", "p_value", "reject"}, {}};
  over_lambdas(c.lambdas, r, errors, [&](double lambda) {
    const FitResult f = fit(l.data, lambda);
    const WaldTestResult w = wald_statistic(f, hyp, c.alpha);
    t.rows.push_back({lambda, w.statistic, static_cast<long>(w.df), w.p_value,
                      std::string(w.reject ? "yes" : "no")});
    tests.push_back(Json{{"lambda", lambda},
                         {"statistic", w.statistic},
                         {"df", w.df},
                         {"p_value", w.p_value},
                         {"critical_value", w.critical_value},
                         {"reject", w.reject},
                         {"beta", to_json(f.beta_hat)}});
  });
  r.report.json = Json{{"command", "test"},
                       {"dataset", l.name},
                       {"hypothesis", c.hyp},
                       {"alpha", c.alpha},
                       {"tests", tests},
                       {"errors", errors}};
  r.report.tables = {t};
  return r;
}

CommandResult run_influence(const InfluenceCommand& c) {
  const TuningParameter tp(c.lambda);
  if (c.quantity != "if" && c.quantity != "if2" && c.quantity != "pif") {
    throw UsageError("--quantity must be if, if2 or pif");
  }
  if (c.quantity != "if" && c.hyp.empty()) throw UsageError("--hyp is required for " + c.quantity);
  if (c.quantity == "pif" && c.d.empty()) throw UsageError("--d is required for pif");
  if (c.quantity != "pif" && !c.d.empty()) throw UsageError("--d applies to pif only");
  if (c.quantity == "if" && !c.hyp.empty()) throw UsageError("--hyp does not apply to if");
  if (!c.model.data.given() && c.model.beta0.empty()) {
    throw UsageError("give --beta0 or a data source");
  }
  detail::check_alpha(c.alpha);

  const Model m = model_for(c.model, c.lambda, c.model.data.given() ? "pilot" : "normal");
  const Eigen::Index dim = m.beta0.size();
  Vector base = Vector::Zero(dim);
  base(0) = 1.0;
  if (!c.at.empty()) {
    if (static_cast<Eigen::Index>(c.at.size()) != dim - 1) {
      throw UsageError("--at needs " + std::to_string(dim - 1) + " covariate values");
    }
    base.tail(dim - 1) = to_vector(c.at);
  }
  std::vector<double> ax1{base.size() > 1 ? base(1) : 0.0};
  std::vector<double> ax2;
  if (!c.x1.empty()) ax1 = parse_range(c.x1, "--x1");
  if (!c.x2.empty()) {
    if (dim < 3) throw UsageError("--x2 needs at least two covariates");
    ax2 = parse_range(c.x2, "--x2");
  } else if (dim >= 3) {
    ax2 = {base(2)};
  }
  if (dim < 2) throw UsageError("the model has no covariates");

  std::optional<LinearHypothesis> hyp;
  if (!c.hyp.empty()) hyp = LinearHypothesis::parse(c.hyp, dim);
  const FitContext ctx{m.j, m.sigma};

  Table t{"influence", {"x1"}, {}};
  if (!ax2.empty()) t.columns.push_back("x2");
  if (c.quantity == "if") {
    for (Eigen::Index i = 0; i < dim; ++i) t.columns.push_back("if_b" + std::to_string(i));
    t.columns.push_back("norm");
  } else {
    t.columns.push_back(c.quantity);
  }
  Json points = Json::array();
  const std::vector<double> second = ax2.empty() ? std::vector<double>{0.0} : ax2;
  for (double v1 : ax1) {
    for (double v2 : second) {
      ContaminationPoint w{base, c.y_t};
      w.x_t(1) = v1;
      if (!ax2.empty()) w.x_t(2) = v2;
      std::vector<Cell> row{v1};
      Json p{{"x_t", to_json(w.x_t)}};
      if (!ax2.empty()) row.push_back(v2);
      if (c.quantity == "if") {
        const IfResult res = if_mdpde(w, m.beta0, m.j, tp);
        for (Eigen::Index i = 0; i < dim; ++i) row.push_back(res.if_vector(i));
        row.push_back(res.if_vector.norm());
        p["if"] = to_json(res.if_vector);
        p["norm"] = res.if_vector.norm();
      } else if (c.quantity == "if2") {
        const double v = if2_wald(w, m.beta0, ctx, *hyp, tp);
        row.push_back(v);
        p["if2"] = v;
      } else {
        const double v = pif(w, to_vector(c.d), m.beta0, ctx, *hyp, tp, c.alpha);
        row.push_back(v);
        p["pif"] = v;
      }
      t.rows.push_back(std::move(row));
      points.push_back(std::move(p));
    }
  }
  CommandResult r;
  r.report.json = Json{{"command", "influence"},
                       {"quantity", c.quantity},
                       {"lambda", c.lambda},
                       {"beta0", to_json(m.beta0)},
                       {"y_t", c.y_t},
                       {"covariance_source", m.source},
                       {"points", points}};
  r.report.tables = {t};
  return r;
}

namespace {

void check_power_flags(const PowerCommand& c) {
  if (!c.beta_star.empty() && !c.d.empty()) {
    throw UsageError("--beta-star and --d are mutually exclusive");
  }
  if (c.hyp.empty()) throw UsageError("--hyp is required");
  detail::check_alpha(c.alpha);
  TuningParameter{c.lambda};
}

}  // namespace

CommandResult run_power(const PowerCommand& c) {
  check_power_flags(c);
  if (c.beta_star.empty() && c.d.empty()) throw UsageError("give --beta-star or --d");
  const std::string source = default_source(c.model, c.sigma_source);
  CommandResult r;
  Table t{"power", {}, {}};

  if (!c.beta_star.empty()) {
    if (c.n.empty()) throw UsageError("--n is required with --beta-star");
    if (!c.x_t.empty() || c.epsilon != std::vector<double>{0.0}) {
      throw UsageError("contamination applies to contiguous alternatives (--d) only");
    }
    if (!c.model.beta0.empty()) throw UsageError("--beta0 applies to contiguous alternatives");
    const Model m = model_for(c.model, c.lambda, source,
                              source == "normal" ? c.beta_star : std::vector<double>{});
    const Coefficients bs = to_vector(c.beta_star);
    const LinearHypothesis hyp = LinearHypothesis::parse(c.hyp, m.beta0.size());
    t.columns = {"n", "power"};
    Json rows = Json::array();
    for (double n : c.n) {
      if (!(n > 0)) throw UsageError("--n values must be positive");
      const double p = power_fixed_alternative(bs, m.sigma, hyp, n, c.alpha);
      t.rows.push_back({n, p});
      rows.push_back(Json{{"n", n}, {"power", p}});
    }
    r.report.json = Json{{"command", "power"},
                         {"mode", "fixed"},
                         {"lambda", c.lambda},
                         {"alpha", c.alpha},
                         {"hypothesis", c.hyp},
                         {"beta_star", to_json(bs)},
                         {"covariance_source", m.source},
                         {"sigma", to_json(m.sigma)},
                         {"results", rows}};
    r.report.tables = {t};
    return r;
  }

  if (!c.n.empty()) throw UsageError("--n applies to fixed alternatives (--beta-star)");
  const Model m = model_for(c.model, c.lambda, source);
  const LinearHypothesis hyp = LinearHypothesis::parse(c.hyp, m.beta0.size());
  const Vector d = to_vector(c.d);
  if (d.size() != m.beta0.size()) {
    throw DimensionMismatch("--d has " + std::to_string(d.size()) + " entries, expected " +
                            std::to_string(m.beta0.size()));
  }
  bool contaminated = false;
  for (double e : c.epsilon) contaminated = contaminated || e != 0.0;
  std::optional<Vector> influence;
  if (!c.x_t.empty()) {
    ContaminationPoint w{Vector(m.beta0.size()), c.y_t};
    w.x_t(0) = 1.0;
    if (static_cast<Eigen::Index>(c.x_t.size()) != m.beta0.size() - 1) {
      throw UsageError("--x-t needs " + std::to_string(m.beta0.size() - 1) + " values");
    }
    w.x_t.tail(m.beta0.size() - 1) = to_vector(c.x_t);
    influence = if_mdpde(w, m.beta0, m.j, TuningParameter(c.lambda)).if_vector;
  } else if (contaminated) {
    throw UsageError("nonzero --epsilon needs a contamination point (--x-t)");
  }
  const double delta = contiguous_noncentrality(d, m.sigma, hyp);
  t.columns = {"epsilon", "power"};
  Json rows = Json::array();
  for (double e : c.epsilon) {
    const double p = influence ? power_contiguous_contaminated(d, e, *influence, m.sigma,
                                                               hyp, c.alpha)
                               : power_contiguous(d, m.sigma, hyp, c.alpha);
    t.rows.push_back({e, p});
    rows.push_back(Json{{"epsilon", e}, {"power", p}});
  }
  r.report.json = Json{{"command", "power"},
                       {"mode", "contiguous"},
                       {"lambda", c.lambda},
                       {"alpha", c.alpha},
                       {"hypothesis", c.hyp},
                       {"d", to_json(d)},
                       {"beta0", to_json(m.beta0)},
                       {"noncentrality", delta},
                       {"covariance_source", m.source},
                       {"sigma", to_json(m.sigma)},
                       {"results", rows}};
  if (influence) r.report.json["influence"] = to_json(*influence);
  r.report.tables = {t};
  return r;
}

CommandResult run_samplesize(const PowerCommand& c) {
  check_power_flags(c);
  if (!c.d.empty()) throw UsageError("sample size needs a fixed alternative (--beta-star)");
  if (c.beta_star.empty()) throw UsageError("--beta-star is required");
  if (!c.n.empty() || !c.x_t.empty()) throw UsageError("--n and --x-t do not apply here");
  if (!c.model.beta0.empty()) throw UsageError("--beta0 does not apply here");
  if (!(c.target_power > 0.0 && c.target_power < 1.0)) {
    throw UsageError("--target-power must lie in (0, 1)");
  }
  const std::string source = default_source(c.model, c.sigma_source);
  const Model m = model_for(c.model, c.lambda, source,
                            source == "normal" ? c.beta_star : std::vector<double>{});
  const Coefficients bs = to_vector(c.beta_star);
  const LinearHypothesis hyp = LinearHypothesis::parse(c.hyp, m.beta0.size());
  const double n_real = required_sample_size_real(bs, m.sigma, hyp, c.alpha, c.target_power);
  const long n = required_sample_size(bs, m.sigma, hyp, c.alpha, c.target_power);
  const double at_n = power_fixed_alternative(bs, m.sigma, hyp, static_cast<double>(n), c.alpha);
  const double below =
      n > 1 ? power_fixed_alternative(bs, m.sigma, hyp, static_cast<double>(n - 1), c.alpha)
            : 0.0;
  CommandResult r;
  r.report.json = Json{{"command", "samplesize"},
                       {"lambda", c.lambda},
                       {"alpha", c.alpha},
                       {"hypothesis", c.hyp},
                       {"beta_star", to_json(bs)},
                       {"target_power", c.target_power},
                       {"covariance_source", m.source},
                       {"n_real", n_real},
                       {"n", n},
                       {"power_at_n", at_n},
                       {"power_at_n_minus_1", below}};
  r.report.tables = {Table{"sample size",
                           {"target_power", "n_real", "n", "power_at_n", "power_at_n_minus_1"},
                           {{c.target_power, n_real, n, at_n, below}}}};
  return r;
}

CommandResult run_simulate(const SimulateCommand& c) {
  if (c.mode != "level" && c.mode != "power") throw UsageError("--mode must be level or power");
  if (!c.contaminate && (!c.mu.empty() || c.sd != 0.01)) {
    throw UsageError("--mu and --sd need --contaminate");
  }
  SimulationDesign design = c.mode == "level" ? SimulationDesign::level_default()
                                              : SimulationDesign::power_default();
  if (!c.n.empty()) design.n_grid = c.n;
  if (!c.lambdas.empty()) {
    design.lambda_grid.clear();
    for (double l : c.lambdas) design.lambda_grid.emplace_back(l);
  }
  design.replications = c.reps;
  design.seed = c.seed;
  design.threads = c.threads;
  design.alpha = c.alpha;
  if (!c.beta_true.empty()) design.beta_true = to_vector(c.beta_true);
  if (!c.hyp.empty()) {
    design.hypothesis = LinearHypothesis::parse(c.hyp, design.beta_true.size());
  } else if (design.beta_true.size() != 3) {
    throw UsageError("--hyp is required when --beta-true changes the dimension");
  }
  std::optional<ContaminationSpec> spec;
  if (c.contaminate) {
    spec = ContaminationSpec::leverage_default();
    spec->fraction = *c.contaminate;
    spec->leverage_sd = c.sd;
    if (!c.mu.empty()) {
      spec->leverage_mean = to_vector(c.mu);
    } else if (design.k() != 2) {
      throw UsageError("--mu is required unless there are two covariates");
    }
    spec->validate(design.k());
  }
  design.validate();

  const SimulationReport rep = c.mode == "level" ? run_level_experiment(design, spec)
                                                 : run_power_experiment(design, spec);
  Table t{c.mode == "level" ? "empirical level" : "empirical power",
          {"lambda", "n", "rejections", "successes", "failures", "rate", "std_error"},
          {}};
  Json cells = Json::array();
  for (const SimulationCell& cell : rep.cells) {
    t.rows.push_back({cell.lambda, cell.n, cell.rejections, cell.successes, cell.failures,
                      cell.rate, cell.standard_error});
    cells.push_back(Json{{"lambda", cell.lambda},
                         {"n", cell.n},
                         {"rejections", cell.rejections},
                         {"successes", cell.successes},
                         {"failures", cell.failures},
                         {"rate", cell.rate},
                         {"std_error", cell.standard_error}});
  }
  Json contamination = nullptr;
  if (spec) {
    contamination = Json{{"fraction", spec->fraction},
                         {"mu", to_json(spec->leverage_mean)},
                         {"sd", spec->leverage_sd}};
  }
  std::vector<double> lambdas;
  for (TuningParameter l : design.lambda_grid) lambdas.push_back(l.value());
  CommandResult r;
  r.report.json = Json{{"command", "simulate"},
                       {"mode", c.mode},
                       {"beta_true", to_json(design.beta_true)},
                       {"hypothesis_m", to_json(design.hypothesis.m_matrix())},
                       {"hypothesis_rhs", to_json(design.hypothesis.m_vector())},
                       {"n_grid", design.n_grid},
                       {"lambda_grid", lambdas},
                       {"replications", design.replications},
                       {"alpha", design.alpha},
                       {"seed", design.seed},
                       {"contamination", contamination},
                       {"cells", cells}};
  r.report.tables = {t};
  return r;
}

}  // namespace dpdlogit::cli
