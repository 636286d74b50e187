// Acceptance checks. `acceptance --report` prints every verdict and exits 0;
// `acceptance AC<n>` runs one check and exits 1 on failure.

#include <dpdlogit/dpdlogit.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include "oracles/finite_diff.hpp"
#include "oracles/irls.hpp"

using namespace dpdlogit;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[fail] ";
    }
    detail << what << "; ";
  }
};

std::string num(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double wald_p(const Dataset& data, double lambda, const std::string& hyp) {
  const FitResult fit = fit_mdpde(data, TuningParameter(lambda));
  return wald_statistic(fit, LinearHypothesis::parse(hyp, data.dim())).p_value;
}

struct Case {
  const char* dataset;
  const char* hyp;
  std::vector<long> drop;
  double full;
  double dropped;
};

// Rows are 1-based in the bundled order.
const std::vector<Case>& reference_cases() {
  static const std::vector<Case> cases = {
      {"lymphatic_cancer", "b2=0", {24}, 0.0430, 0.0668},
      {"vasoconstriction", "b1=0,b2=0", {4, 18}, 0.0194, 0.0371},
      {"leukemia", "b1=0,b2=0", {17}, 0.0226, 0.0683},
  };
  return cases;
}

void ac1(Verdict& v) {
  const auto t0 = std::chrono::steady_clock::now();
  for (const std::string& name : bundled_names()) {
    const Dataset& d = load_bundled(name).data;
    const FitResult fit = fit_mdpde(d, TuningParameter(0.0));
    const Vector ref = oracle::irls(d.x(), d.y());
    double worst = 0.0;
    for (Eigen::Index i = 0; i < ref.size(); ++i) {
      worst = std::max(worst, std::abs(fit.beta_hat(i) - ref(i)) / std::max(1.0, std::abs(ref(i))));
    }
    v.require(worst <= 1e-6, name + " max coefficient error " + num(worst, 3));
  }
  const double secs = seconds_since(t0);
  v.require(secs < 1.0, "runtime " + num(secs, 3) + " s");
}

void ac2(Verdict& v) {
  for (const Case& c : reference_cases()) {
    const double p = wald_p(load_bundled(c.dataset).data, 0.0, c.hyp);
    v.require(std::abs(p - c.full) <= 0.002,
              std::string(c.dataset) + " p " + num(p) + " vs " + num(c.full));
  }
}

void ac3(Verdict& v) {
  for (const Case& c : reference_cases()) {
    const NamedDataset d = drop_rows(load_bundled(c.dataset), c.drop);
    const double p = wald_p(d.data, 0.0, c.hyp);
    v.require(std::abs(p - c.dropped) <= 0.002,
              std::string(c.dataset) + " p " + num(p) + " vs " + num(c.dropped));
  }
}

void ac4(Verdict& v) {
  for (const Case& c : reference_cases()) {
    const NamedDataset full = load_bundled(c.dataset);
    try {
      const double a = wald_p(full.data, 1.0, c.hyp);
      const double b = wald_p(drop_rows(full, c.drop).data, 1.0, c.hyp);
      v.require(std::abs(a - b) < 0.05, std::string(c.dataset) + " lambda=1 p " + num(a) +
                                            " full, " + num(b) + " deleted");
    } catch (const Error& e) {
      v.require(false, std::string(c.dataset) + " lambda=1 fit failed: " + e.what());
    }
  }
}

void ac5(Verdict& v) {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 gen(505);
  std::normal_distribution<double> norm;
  std::uniform_int_distribution<long> size(10, 50), cols(1, 3);
  const double lambdas[] = {0.1, 0.5, 1.0};
  double worst = 0.0;
  for (int rep = 0; rep < 50; ++rep) {
    const long n = size(gen), k = cols(gen);
    Matrix x(n, k + 1);
    Vector y(n);
    Vector beta(k + 1);
    for (long j = 0; j <= k; ++j) beta(j) = 0.7 * norm(gen);
    for (long i = 0; i < n; ++i) {
      x(i, 0) = 1.0;
      for (long j = 1; j <= k; ++j) x(i, j) = norm(gen);
      y(i) = i % 2;
    }
    const Dataset d(x, y);
    const TuningParameter tp(lambdas[rep % 3]);
    const Vector fd = oracle::central_gradient(
        [&](const Vector& b) { return dpd_objective(d, b, tp); }, beta, 1e-5);
    const Vector analytic = (1.0 + tp.value()) / std::pow(static_cast<double>(n), tp.value() + 1.0) *
                            estimating_equation(d, beta, tp);
    const double scale = std::max(fd.cwiseAbs().maxCoeff(), 1e-300);
    worst = std::max(worst, (analytic - fd).cwiseAbs().maxCoeff() / scale);
  }
  v.require(worst < 1e-5, "50 instances, max relative error " + num(worst, 3));
  const double secs = seconds_since(t0);
  v.require(secs < 10.0, "runtime " + num(secs, 3) + " s");
}

SimulationDesign at_n100(SimulationDesign d) {
  d.n_grid = {100};
  return d;
}

void ac6(Verdict& v) {
  const auto t0 = std::chrono::steady_clock::now();
  const SimulationDesign design = at_n100(SimulationDesign::level_default());
  const SimulationReport r = run_level_experiment(design);
  for (const SimulationCell& c : r.cells) {
    v.require(std::abs(c.rate - 0.05) <= 0.02,
              "lambda " + num(c.lambda) + " level " + num(c.rate) + " (se " +
                  num(c.standard_error, 2) + ")");
  }
  const double secs = seconds_since(t0);
  v.require(secs < 300.0, "runtime " + num(secs, 3) + " s");
}

void ac7(Verdict& v) {
  const SimulationReport r = run_level_experiment(at_n100(SimulationDesign::level_default()),
                                                  ContaminationSpec::leverage_default());
  const double l0 = r.at(0.0, 100).rate, l1 = r.at(1.0, 100).rate;
  v.require(std::abs(l1 - 0.05) < std::abs(l0 - 0.05),
            "level lambda=1 " + num(l1) + " closer to 0.05 than lambda=0 " + num(l0));
  v.require(l0 > 0.15, "lambda=0 level above 0.15");
}

void ac8(Verdict& v) {
  const SimulationReport r = run_power_experiment(at_n100(SimulationDesign::power_default()),
                                                  ContaminationSpec::leverage_default());
  const double p0 = r.at(0.0, 100).rate, p1 = r.at(1.0, 100).rate;
  v.require(p1 > p0, "power lambda=1 " + num(p1) + " vs lambda=0 " + num(p0));
}

void ac9(Verdict& v) {
  std::mt19937_64 gen(909);
  std::normal_distribution<double> norm;
  const long draws = 10000000;
  const double x = 3.841;
  long below = 0;
  for (long i = 0; i < draws; ++i) {
    const double z = norm(gen) + 2.0;
    if (z * z <= x) ++below;
  }
  const double mc = static_cast<double>(below) / draws;
  const double se = std::sqrt(mc * (1 - mc) / draws);
  const double cdf = noncentral_chi2_cdf(x, 1, 4.0);
  v.require(std::abs(cdf - mc) < 3 * se,
            "cdf " + num(cdf, 6) + " vs Monte Carlo " + num(mc, 6) + " (se " + num(se, 2) + ")");

  double series_gap = 0.0;
  for (int df = 1; df <= 4; ++df) {
    const double crit = chi2_quantile(0.95, df);
    for (double delta : {0.0, 0.5, 3.0, 12.0, 40.0}) {
      Vector t = Vector::Zero(df);
      t(0) = std::sqrt(delta);
      const double s = cv_series_sf(t, Matrix::Identity(df, df), df, crit);
      series_gap = std::max(series_gap, std::abs(s - noncentral_chi2_sf(crit, df, delta)));
    }
  }
  v.require(series_gap < 1e-8, "series gap " + num(series_gap, 3));

  double round_trip = 0.0;
  for (int df : {1, 2, 3, 5, 10}) {
    for (double p : {0.001, 0.05, 0.5, 0.9, 0.95, 0.999}) {
      round_trip = std::max(round_trip, std::abs(chi2_cdf(chi2_quantile(p, df), df) - p));
    }
  }
  v.require(round_trip < 1e-10, "quantile round trip " + num(round_trip, 3));
}

void ac10(Verdict& v) {
  const Vector beta0{{0.0, 1.0, 1.0}};
  const LinearHypothesis hyp = LinearHypothesis::parse("b1=1,b2=1", 3);
  auto context = [&](double lambda) {
    return FitContext::from(population_information(beta0, TuningParameter(lambda),
                                                   CovariateLaw::standard_normal(2)));
  };

  double fact = 0.0;
  for (double lambda : {0.0, 0.5, 1.0}) {
    const FitContext ctx = context(lambda);
    for (double a : {-3.0, 0.5, 4.0}) {
      for (double y : {0.0, 1.0}) {
        const ContaminationPoint w{Vector{{1.0, a, 2.0 - a}}, y};
        const TuningParameter tp(lambda);
        const Vector r = if_mdpde(w, beta0, ctx.j, tp).if_vector;
        const Vector alt = tilde_psi(w.x_t.dot(beta0), y, tp) * ctx.j.ldlt().solve(w.x_t);
        fact = std::max(fact, (r - alt).cwiseAbs().maxCoeff() / r.cwiseAbs().maxCoeff());
      }
    }
  }
  v.require(fact < 1e-12, "factorization " + num(fact, 3));

  auto ray = [&](double lambda) {
    const FitContext ctx = context(lambda);
    std::vector<double> out;
    for (double t : {5.0, 10.0, 20.0, 30.0}) {
      out.push_back(if_mdpde({Vector{{1.0, t, t}}, 0.0}, beta0, ctx.j, TuningParameter(lambda))
                        .if_vector.norm());
    }
    return out;
  };
  const std::vector<double> r0 = ray(0.0), r1 = ray(1.0);
  v.require(r0[0] < r0[1] && r0[1] < r0[2] && r0[2] < r0[3],
            "lambda=0 ray norms " + num(r0[0]) + " .. " + num(r0[3]));
  v.require(r1[3] < r1[0], "lambda=1 ray norm at 30 " + num(r1[3]) + " below " + num(r1[0]));

  double lowest = 0.0;
  for (double lambda : {0.0, 0.1, 0.5, 1.0}) {
    const FitContext ctx = context(lambda);
    for (double a = -5.0; a <= 5.0; a += 0.5) {
      for (double b = -5.0; b <= 5.0; b += 0.5) {
        for (double y : {0.0, 1.0}) {
          lowest = std::min(lowest, if2_wald({Vector{{1.0, a, b}}, y}, beta0, ctx, hyp,
                                             TuningParameter(lambda)));
        }
      }
    }
  }
  v.require(lowest >= 0.0, "if2 minimum on grid " + num(lowest, 3));

  double pif_gap = 0.0;
  const Vector d{{0.0, 1.5, 0.5}};
  for (double lambda : {0.0, 0.5, 1.0}) {
    const FitContext ctx = context(lambda);
    const TuningParameter tp(lambda);
    for (double a : {-2.0, 1.0, 3.0}) {
      const ContaminationPoint w{Vector{{1.0, a, -a}}, 1.0};
      const Vector infl = if_mdpde(w, beta0, ctx.j, tp).if_vector;
      const double fd = oracle::central_derivative(
          [&](double e) {
            return power_contiguous_contaminated(d, std::abs(e), infl * (e < 0 ? -1.0 : 1.0),
                                                 ctx.sigma, hyp, 0.05);
          },
          0.0, 1e-4);
      pif_gap = std::max(pif_gap, std::abs(pif(w, d, beta0, ctx, hyp, tp, 0.05) - fd));
    }
  }
  v.require(pif_gap < 1e-4, "pif finite-difference gap " + num(pif_gap, 3));
}

void ac11(Verdict& v) {
  struct PowerCase {
    double lambda;
    const char* hyp;
    Vector beta_star;
    double alpha, target;
  };
  const std::vector<PowerCase> cases = {
      {0.0, "b1=1,b2=1", Vector{{0.0, 1.2, 1.2}}, 0.05, 0.8},
      {0.5, "b1=1,b2=1", Vector{{0.0, 1.2, 1.2}}, 0.05, 0.8},
      {1.0, "b1=1,b2=1", Vector{{0.0, 1.2, 1.2}}, 0.05, 0.8},
      {0.0, "b1=1", Vector{{0.0, 1.3, 1.0}}, 0.01, 0.9},
      {0.1, "b1=1", Vector{{0.0, 0.8, 1.0}}, 0.05, 0.8},
      {1.0, "b2=1", Vector{{0.0, 1.0, 1.5}}, 0.10, 0.95},
      {0.5, "b1-b2=0", Vector{{0.0, 1.4, 1.0}}, 0.05, 0.7},
      {0.0, "b0=0", Vector{{0.3, 1.0, 1.0}}, 0.05, 0.8},
      {1.0, "b0=0,b1=1,b2=1", Vector{{0.2, 1.1, 1.0}}, 0.05, 0.85},
      {0.5, "b1=1,b2=1", Vector{{0.0, 1.01, 1.0}}, 0.05, 0.8},
  };
  const Vector beta0{{0.0, 1.0, 1.0}};
  int good = 0;
  for (const PowerCase& c : cases) {
    const Matrix sigma = population_information(beta0, TuningParameter(c.lambda),
                                                CovariateLaw::standard_normal(2))
                             .sigma;
    const LinearHypothesis hyp = LinearHypothesis::parse(c.hyp, 3);
    const long n = required_sample_size(c.beta_star, sigma, hyp, c.alpha, c.target);
    const double at = power_fixed_alternative(c.beta_star, sigma, hyp, n, c.alpha);
    const double below = power_fixed_alternative(c.beta_star, sigma, hyp, n - 1, c.alpha);
    if (at >= c.target && below < c.target) {
      ++good;
    } else {
      v.require(false, std::string(c.hyp) + " n " + std::to_string(n) + " power " + num(at) +
                           " / " + num(below));
    }
  }
  v.require(good == static_cast<int>(cases.size()),
            std::to_string(good) + "/" + std::to_string(cases.size()) + " cases consistent");
}

const std::map<std::string, std::function<void(Verdict&)>>& checks() {
  static const std::map<std::string, std::function<void(Verdict&)>> m = {
      {"AC1", ac1}, {"AC2", ac2}, {"AC3", ac3}, {"AC4", ac4},   {"AC5", ac5},   {"AC6", ac6},
      {"AC7", ac7}, {"AC8", ac8}, {"AC9", ac9}, {"AC10", ac10}, {"AC11", ac11},
  };
  return m;
}

bool run_one(const std::string& id) {
  Verdict v;
  try {
    checks().at(id)(v);
  } catch (const std::exception& e) {
    v.require(false, std::string("error: ") + e.what());
  }
  std::string detail = v.detail.str();
  if (detail.size() >= 2) detail.resize(detail.size() - 2);
  std::printf("%s %s %s\n", id.c_str(), v.pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  return v.pass;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string arg = argc > 1 ? argv[1] : "--report";
  if (arg == "--report") {
    for (int i = 1; i <= 11; ++i) run_one("AC" + std::to_string(i));
    return 0;
  }
  if (!checks().count(arg)) {
    std::fprintf(stderr, "usage: acceptance [--report | AC1..AC11]\n");
    return 2;
  }
  return run_one(arg) ? 0 : 1;
}
