#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "muculant/decomposition.hpp"
#include "muculant/error.hpp"
#include "muculant/inference.hpp"
#include "muculant/zoo.hpp"

namespace {

using namespace muculant;

void BM_ComplexMuculants(benchmark::State& state) {
  const Pmf f = zoo_pmf(Poisson{2.0});
  const FrequencyGrid grid(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(complex_muculants(f, 20, grid));
}
BENCHMARK(BM_ComplexMuculants)->Arg(1024)->Arg(4096)->Arg(16384);

// One bootstrap replicate: multinomial counts, empirical CF, muculants.
void BM_BootstrapReplicate(benchmark::State& state) {
  const Pmf f = zoo_pmf(Poisson{3.0});
  const FrequencyGrid grid(4096);
  std::mt19937_64 rng(1);
  std::vector<double> probs(f.probs().begin(), f.probs().end());
  for (auto _ : state) {
    const auto counts = multinomial_counts(10'000, probs, rng);
    try {
      benchmark::DoNotOptimize(estimate_muculants_from_counts(0, counts, grid, 16, 1e-8));
    } catch (const Error&) {
      // poisson_test drops such replicates too
    }
  }
}
BENCHMARK(BM_BootstrapReplicate);

void BM_PoissonTest(benchmark::State& state) {
  const Pmf f = zoo_pmf(Poisson{3.0});
  std::mt19937_64 rng(2);
  std::discrete_distribution<int> law(f.probs().begin(), f.probs().end());
  std::vector<std::int64_t> xs(10'000);
  for (auto& x : xs) x = law(rng);
  PoissonTestOptions o;
  o.n_bootstrap = 200;
  o.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(poisson_test(xs, o));
}
BENCHMARK(BM_PoissonTest)->Unit(benchmark::kMillisecond);

void BM_Decompose(benchmark::State& state) {
  const Pmf f = reflect(zoo_pmf(Geometric{0.2}));
  for (auto _ : state) benchmark::DoNotOptimize(decompose(f, state.range(0)));
}
BENCHMARK(BM_Decompose)->Arg(200)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
