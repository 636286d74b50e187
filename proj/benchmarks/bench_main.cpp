#include <benchmark/benchmark.h>

#include <dpdlogit/dpdlogit.hpp>

#include <random>

using namespace dpdlogit;

namespace {

Dataset sample(long n) {
  SimulationDesign design = SimulationDesign::level_default();
  Philox rng = replication_stream(design, n, 0);
  return generate_dataset(design, n, rng);
}

void BM_Fit(benchmark::State& state) {
  const Dataset d = sample(state.range(0));
  const TuningParameter lambda(state.range(1) / 10.0);
  for (auto _ : state) benchmark::DoNotOptimize(fit_mdpde(d, lambda));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Fit)->ArgsProduct({{50, 200, 1000, 10000}, {0, 5, 10}});

void BM_BundledPath(benchmark::State& state) {
  const Dataset d = load_bundled("lymphatic_cancer").data;
  const std::vector<TuningParameter> grid = {TuningParameter(0.0), TuningParameter(0.1),
                                             TuningParameter(0.5), TuningParameter(1.0)};
  for (auto _ : state) benchmark::DoNotOptimize(fit_mdpde_path(d, grid));
}
BENCHMARK(BM_BundledPath);

void BM_NoncentralChi2(benchmark::State& state) {
  const double delta = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(noncentral_chi2_sf(7.81, 3, delta));
}
BENCHMARK(BM_NoncentralChi2)->Arg(1)->Arg(20)->Arg(200);

void BM_Chi2Quantile(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(chi2_quantile(0.95, 4));
}
BENCHMARK(BM_Chi2Quantile);

void BM_InfluenceGrid(benchmark::State& state) {
  const Vector beta0{{0.0, 1.0, 1.0}};
  const TuningParameter lambda(state.range(0) / 10.0);
  const FitContext ctx = FitContext::from(
      population_information(beta0, lambda, CovariateLaw::standard_normal(2)));
  const LinearHypothesis hyp = LinearHypothesis::parse("b1=1,b2=1", 3);
  for (auto _ : state) {
    double total = 0.0;
    for (int i = 0; i < 41; ++i) {
      for (int j = 0; j < 41; ++j) {
        const ContaminationPoint w{Vector{{1.0, -10.0 + 0.5 * i, -10.0 + 0.5 * j}}, 0.0};
        total += if2_wald(w, beta0, ctx, hyp, lambda);
      }
    }
    benchmark::DoNotOptimize(total);
  }
}
BENCHMARK(BM_InfluenceGrid)->Arg(0)->Arg(10);

void BM_PopulationInformation(benchmark::State& state) {
  const Vector beta0{{0.0, 1.0, 1.0}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(population_information(beta0, TuningParameter(0.5),
                                                    CovariateLaw::standard_normal(2)));
  }
}
BENCHMARK(BM_PopulationInformation);

}  // namespace

BENCHMARK_MAIN();
