// OpenMP paths against their serial references. Thread count follows
// OMP_NUM_THREADS / SWARM_SVR_THREADS.

#include <benchmark/benchmark.h>

#include <random>

#include "swarm_svr/kernels.hpp"
#include "swarm_svr/parallel.hpp"
#include "swarm_svr/population.hpp"
#include "swarm_svr/svr.hpp"

namespace {

using namespace swarm_svr;

Matrix random_matrix(std::size_t n, std::size_t d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Matrix m(n, d);
  for (double& v : m.data()) v = g(rng);
  return m;
}

void BM_GramParallel(benchmark::State& state) {
  configure_threads(std::nullopt);
  auto x = random_matrix(static_cast<std::size_t>(state.range(0)), 12, 1);
  for (auto _ : state) benchmark::DoNotOptimize(gram_matrix(KernelSpec::rbf(0.1), x));
}

void BM_GramSerial(benchmark::State& state) {
  auto x = random_matrix(static_cast<std::size_t>(state.range(0)), 12, 1);
  for (auto _ : state) benchmark::DoNotOptimize(gram_matrix_serial(KernelSpec::rbf(0.1), x));
}

BENCHMARK(BM_GramParallel)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GramSerial)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

// One population of SVR fits, the unit of work inside a tuning iteration.
struct PopulationFixture {
  FeatureMatrix x;
  TargetVector y;
  std::vector<std::vector<double>> candidates;
  Objective objective;

  explicit PopulationFixture(std::size_t size) {
    x = FeatureMatrix{random_matrix(200, 12, 2), std::vector<std::string>(12, "f")};
    std::mt19937_64 rng(3);
    std::normal_distribution<double> g;
    for (std::size_t i = 0; i < 200; ++i) y.push_back(x.values(i, 0) - 0.5 * x.values(i, 3) + 0.1 * g(rng));
    std::uniform_real_distribution<double> u(0.01, 10.0);
    for (std::size_t k = 0; k < size; ++k) candidates.push_back({u(rng), u(rng) / 10.0});
    objective = [this](std::span<const double> p) {
      auto m = train(x, y, SvrParams(p[0], 0.1, KernelSpec::rbf(p[1])));
      return static_cast<double>(m.num_support_vectors());
    };
  }
};

void BM_PopulationParallel(benchmark::State& state) {
  configure_threads(std::nullopt);
  PopulationFixture f(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_population(f.objective, f.candidates));
}

void BM_PopulationSerial(benchmark::State& state) {
  PopulationFixture f(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_population_serial(f.objective, f.candidates));
}

BENCHMARK(BM_PopulationParallel)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PopulationSerial)->Arg(16)->Unit(benchmark::kMillisecond);

struct PredictFixture {
  SvrModel model;
  FeatureMatrix probe;

  PredictFixture() {
    FeatureMatrix x{random_matrix(800, 12, 4), std::vector<std::string>(12, "f")};
    TargetVector y(800);
    for (std::size_t i = 0; i < 800; ++i) y[i] = std::sin(x.values(i, 0)) + x.values(i, 1);
    model = train(x, y, SvrParams(5.0, 0.05, KernelSpec::rbf(0.1)));
    probe = FeatureMatrix{random_matrix(4000, 12, 5), x.feature_names};
  }
};

void BM_PredictParallel(benchmark::State& state) {
  configure_threads(std::nullopt);
  static PredictFixture f;
  for (auto _ : state) benchmark::DoNotOptimize(predict_batch(f.model, f.probe));
}

void BM_PredictSerial(benchmark::State& state) {
  static PredictFixture f;
  for (auto _ : state) benchmark::DoNotOptimize(predict_batch_serial(f.model, f.probe));
}

BENCHMARK(BM_PredictParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PredictSerial)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
