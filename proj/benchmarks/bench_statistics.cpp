#include <benchmark/benchmark.h>

#include <Eigen/Dense>

#include "multidep/dataset.hpp"
#include "multidep/random.hpp"
#include "multidep/statistic.hpp"
#include "multidep/transform.hpp"

using namespace multidep;

namespace {

Dataset make_data(int rows, int margins, std::uint64_t seed) {
  RandomStream stream(seed);
  Eigen::MatrixXd values(rows, margins);
  for (int j = 0; j < rows; ++j)
    for (int i = 0; i < margins; ++i) values(j, i) = stream.normal();
  return Dataset(values, Grouping::univariate(margins));
}

void transform_cost(benchmark::State& state) {
  const int rows = static_cast<int>(state.range(0));
  const Dataset data = make_data(rows, 5, 7);
  RandomStream stream(8);
  const UniformDraws draws = draw_uniforms(rows, 5, stream);
  for (auto _ : state) {
    benchmark::DoNotOptimize(empirical_transform(data, draws));
  }
  state.SetComplexityN(rows);
}
BENCHMARK(transform_cost)->Arg(100)->Arg(1000)->Arg(10000)->Complexity();

void statistic_cost(benchmark::State& state, StatisticKind kind) {
  const int rows = static_cast<int>(state.range(0));
  const Dataset data = make_data(rows, 5, 7);
  RandomStream stream(8);
  const UniformDraws draws = draw_uniforms(rows, 5, stream);
  StatisticSpec spec;
  spec.kind = kind;
  if (kind == StatisticKind::dhsic) spec.kernel = KernelSpec::gaussian(3.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(evaluate_statistic(data, draws, spec));
  }
  state.SetComplexityN(rows);
}
BENCHMARK_CAPTURE(statistic_cost, normalized_total,
                  StatisticKind::normalized_total)
    ->Arg(100)
    ->Arg(500)
    ->Complexity();
BENCHMARK_CAPTURE(statistic_cost, dhsic, StatisticKind::dhsic)
    ->Arg(100)
    ->Arg(500)
    ->Complexity();

// permuted re-evaluation is the inner loop of the permutation test; it skips
// the transform and matrix builds, so it must come out far cheaper than a
// fresh evaluation
void permuted_evaluation_cost(benchmark::State& state) {
  const int rows = static_cast<int>(state.range(0));
  const Dataset data = make_data(rows, 5, 7);
  RandomStream stream(8);
  const UniformDraws draws = draw_uniforms(rows, 5, stream);
  const PreparedStatistic prepared = prepare_statistic(data, draws, StatisticSpec{});
  std::vector<std::vector<int>> perms(5);
  for (int i = 0; i < 5; ++i) perms[static_cast<std::size_t>(i)] = stream.permutation(rows);
  for (auto _ : state) {
    benchmark::DoNotOptimize(prepared.permuted_scaled(perms));
  }
  state.SetComplexityN(rows);
}
BENCHMARK(permuted_evaluation_cost)->Arg(100)->Arg(500)->Complexity();

}  // namespace

BENCHMARK_MAIN();
