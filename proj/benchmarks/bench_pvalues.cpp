#include <benchmark/benchmark.h>

#include <Eigen/Dense>

#include "multidep/dataset.hpp"
#include "multidep/pvalues.hpp"
#include "multidep/random.hpp"
#include "multidep/statistic.hpp"

using namespace multidep;

namespace {

constexpr int kRows = 100;
constexpr int kMargins = 5;

struct Fixture {
  Dataset data;
  UniformDraws draws;
  StatisticSpec spec;
  ReferenceDistribution reference;

  static const Fixture& get() {
    static const Fixture fixture = [] {
      RandomStream stream(11);
      Dataset data(draw_uniforms(kRows, kMargins, stream).values,
                   Grouping::univariate(kMargins));
      UniformDraws draws = draw_uniforms(kRows, kMargins, stream);
      StatisticSpec spec;
      ReferenceDistribution reference = build_h0_reference(
          spec, Grouping::univariate(kMargins), kRows, 10000, stream.substream(1));
      return Fixture{std::move(data), std::move(draws), std::move(spec),
                     std::move(reference)};
    }();
    return fixture;
  }
};

void pearson_uniform_cost(benchmark::State& state) {
  const Fixture& f = Fixture::get();
  for (auto _ : state) {
    benchmark::DoNotOptimize(pearson_uniform_report(f.data, f.draws, f.spec, 0));
  }
}
BENCHMARK(pearson_uniform_cost);

void reference_lookup_cost(benchmark::State& state) {
  const Fixture& f = Fixture::get();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        reference_pvalue(f.data, f.draws, f.spec, f.reference, 0));
  }
}
BENCHMARK(reference_lookup_cost);

void permutation_cost(benchmark::State& state) {
  const Fixture& f = Fixture::get();
  const int resamples = static_cast<int>(state.range(0));
  RandomStream stream(12);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        permutation_pvalue(f.data, f.draws, f.spec, resamples, stream));
  }
}
BENCHMARK(permutation_cost)->Arg(100)->Arg(300);

void gamma_batch_cost(benchmark::State& state) {
  const Fixture& f = Fixture::get();
  RandomStream stream(13);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        gamma_report(f.data, f.draws, f.spec, nullptr, 100, stream));
  }
}
BENCHMARK(gamma_batch_cost);

}  // namespace
