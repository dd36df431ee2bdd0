#include <Eigen/Dense>
#include <algorithm>
#include <vector>

#include "doctest.h"
#include "multidep/dataset.hpp"
#include "multidep/errors.hpp"
#include "multidep/random.hpp"
#include "multidep/stats.hpp"
#include "multidep/transform.hpp"
#include "oracles.hpp"

using namespace multidep;

namespace {

UnivariateLaw bernoulli_half() {
  UnivariateLaw law;
  law.prob_below = [](double x) {
    if (x <= 0.0) return 0.0;
    if (x <= 1.0) return 0.5;
    return 1.0;
  };
  law.point_mass = [](double x) {
    return (x == 0.0 || x == 1.0) ? 0.5 : 0.0;
  };
  return law;
}

Dataset make_dataset(const Eigen::MatrixXd& values) {
  return Dataset(values, Grouping::univariate(static_cast<int>(values.cols())));
}

}  // namespace

TEST_CASE("population transform evaluates P(X<x) + u P(X=x)") {
  const UnivariateLaw law = bernoulli_half();
  CHECK(population_transform(0.0, 0.5, law) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(population_transform(1.0, 1.0, law) == doctest::Approx(1.0).epsilon(1e-15));

  UnivariateLaw continuous;
  continuous.prob_below = [](double x) { return std::clamp(x, 0.0, 1.0); };
  continuous.point_mass = [](double) { return 0.0; };
  CHECK(population_transform(0.3, 0.0, continuous) == doctest::Approx(0.3));
  CHECK(population_transform(0.3, 1.0, continuous) == doctest::Approx(0.3));

  CHECK_THROWS_AS(population_transform(0.0, -0.1, law), ConfigError);
  CHECK_THROWS_AS(population_transform(0.0, 1.1, law), ConfigError);
}

TEST_CASE("empirical transform value follows the counting formula") {
  const std::vector<double> a{3.0, 1.0, 2.0};
  CHECK(empirical_transform_value(2.0, 0.5, a) == doctest::Approx(0.5).epsilon(1e-15));
  const std::vector<double> b{1.0, 1.0, 2.0};
  CHECK(empirical_transform_value(1.0, 0.5, b) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  const std::vector<double> c{1.0, 2.0, 3.0};
  CHECK(empirical_transform_value(0.0, 0.7, c) == 0.0);
  CHECK_THROWS_AS(empirical_transform_value(0.0, 2.0, c), ConfigError);
}

TEST_CASE("dataset transform matches hand values and handles shape errors") {
  Eigen::MatrixXd values(3, 1);
  values << 3.0, 1.0, 2.0;
  Eigen::MatrixXd u(3, 1);
  u << 0.5, 0.5, 0.5;
  const TransformedDataset t = empirical_transform(make_dataset(values), UniformDraws{u});
  CHECK(t.values(0, 0) == doctest::Approx(5.0 / 6.0).epsilon(1e-15));
  CHECK(t.values(1, 0) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  CHECK(t.values(2, 0) == doctest::Approx(3.0 / 6.0).epsilon(1e-15));

  Eigen::MatrixXd wrong(2, 1);
  wrong << 0.5, 0.5;
  CHECK_THROWS_AS(empirical_transform(make_dataset(values), UniformDraws{wrong}),
                  ConfigError);
}

TEST_CASE("constant column transforms to its draws") {
  Eigen::MatrixXd values = Eigen::MatrixXd::Constant(5, 1, 4.2);
  RandomStream stream(11);
  const UniformDraws draws = draw_uniforms(5, 1, stream);
  const TransformedDataset t = empirical_transform(make_dataset(values), draws);
  // value is (u * N) / N, one rounding away from u itself
  for (int j = 0; j < 5; ++j)
    CHECK(std::abs(t.values(j, 0) - draws.values(j, 0)) <= 1e-16);
}

TEST_CASE("transform equals the double-loop oracle on tied data") {
  RandomStream stream(23);
  Eigen::MatrixXd values(40, 3);
  for (int j = 0; j < 40; ++j) {
    values(j, 0) = std::floor(stream.uniform() * 4.0);  // heavy ties
    values(j, 1) = stream.normal();
    values(j, 2) = stream.uniform() < 0.3 ? 1.0 : stream.normal();
  }
  RandomStream draw_stream(24);
  const UniformDraws draws = draw_uniforms(40, 3, draw_stream);
  const TransformedDataset t = empirical_transform(make_dataset(values), draws);
  const Eigen::MatrixXd expected = oracles::naive_transform(values, draws.values);
  CHECK((t.values - expected).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("tie-free columns obey the rank identity bit-exactly") {
  RandomStream stream(31);
  const int n = 500;
  Eigen::MatrixXd values(n, 1);
  for (int j = 0; j < n; ++j) values(j, 0) = stream.normal();
  RandomStream draw_stream(32);
  const UniformDraws draws = draw_uniforms(n, 1, draw_stream);
  const TransformedDataset t = empirical_transform(make_dataset(values), draws);

  std::vector<int> order(n);
  for (int j = 0; j < n; ++j) order[static_cast<std::size_t>(j)] = j;
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return values(a, 0) < values(b, 0); });
  for (int rank = 0; rank < n; ++rank) {
    const int j = order[static_cast<std::size_t>(rank)];
    const double expected =
        (static_cast<double>(rank) + draws.values(j, 0)) / static_cast<double>(n);
    CHECK(t.values(j, 0) == expected);
  }
}

TEST_CASE("strictly increasing affine maps leave the transform unchanged") {
  RandomStream stream(47);
  Eigen::MatrixXd values(64, 2);
  for (int j = 0; j < 64; ++j) {
    values(j, 0) = std::floor(stream.uniform() * 6.0);
    values(j, 1) = stream.normal();
  }
  RandomStream draw_stream(48);
  const UniformDraws draws = draw_uniforms(64, 2, draw_stream);
  const TransformedDataset base = empirical_transform(make_dataset(values), draws);

  Eigen::MatrixXd mapped = values;
  mapped.col(0) = 2.37 * mapped.col(0).array() - 19.5;
  mapped.col(1) = 0.004 * mapped.col(1).array() + 3.25;
  const TransformedDataset moved = empirical_transform(make_dataset(mapped), draws);
  CHECK(base.values == moved.values);
}

TEST_CASE("transformed tie-free columns are KS-uniform at level 0.01") {
  const int runs = 200;
  const int n = 1000;
  const double critical = ks_uniform_critical(n, 0.01);
  int passes = 0;
  for (int run = 0; run < runs; ++run) {
    RandomStream stream(900 + static_cast<std::uint64_t>(run));
    Eigen::MatrixXd values(n, 1);
    for (int j = 0; j < n; ++j) values(j, 0) = stream.normal();
    const UniformDraws draws = draw_uniforms(n, 1, stream);
    const TransformedDataset t = empirical_transform(make_dataset(values), draws);
    std::vector<double> column(t.values.col(0).data(), t.values.col(0).data() + n);
    if (ks_uniform_statistic(std::move(column)) <= critical) ++passes;
  }
  // level 0.01 means about 2 expected failures; 8+ would be a real defect
  CHECK(passes >= 192);
}
