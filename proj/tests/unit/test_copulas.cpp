#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "multidep/copulas.hpp"
#include "multidep/errors.hpp"
#include "multidep/random.hpp"
#include "multidep/simulate.hpp"
#include "multidep/stats.hpp"

using namespace multidep;

namespace {

double sampled_tau(const CopulaSpec& spec, int rows, std::uint64_t seed) {
  RandomStream stream(seed);
  const Eigen::MatrixXd u = sample_copula(spec, rows, stream);
  std::vector<double> x(u.col(0).data(), u.col(0).data() + rows);
  std::vector<double> y(u.col(1).data(), u.col(1).data() + rows);
  return kendall_tau(x, y);
}

}  // namespace

TEST_CASE("family tokens parse with student degrees of freedom") {
  CHECK(parse_copula_family("independence").first == CopulaFamily::independence);
  CHECK(parse_copula_family("clayton").first == CopulaFamily::clayton);
  CHECK(parse_copula_family("gumbel").first == CopulaFamily::gumbel);
  CHECK(parse_copula_family("frank").first == CopulaFamily::frank);
  CHECK(parse_copula_family("normal").first == CopulaFamily::normal);
  const auto plain = parse_copula_family("student");
  CHECK(plain.first == CopulaFamily::student);
  CHECK(plain.second == 3);
  const auto one = parse_copula_family("student1");
  CHECK(one.second == 1);
  CHECK(parse_copula_family("student12").second == 12);
  CHECK_THROWS_AS(parse_copula_family("gauss"), ConfigError);
  CHECK_THROWS_AS(parse_copula_family("student0"), ConfigError);
  CHECK_THROWS_AS(parse_copula_family(""), ConfigError);
}

TEST_CASE("labels name the family and student df") {
  CopulaSpec spec;
  CHECK(spec.label() == "independence");
  spec.family = CopulaFamily::student;
  spec.student_df = 1;
  CHECK(spec.label() == "student1");
  spec.family = CopulaFamily::clayton;
  CHECK(spec.label() == "clayton");
}

TEST_CASE("parameter inversion hits the closed forms") {
  CHECK(kendall_to_param(CopulaFamily::clayton, 0.1) ==
        doctest::Approx(2.0 / 9.0).epsilon(1e-14));
  CHECK(kendall_to_param(CopulaFamily::clayton, 0.5) ==
        doctest::Approx(2.0).epsilon(1e-14));
  CHECK(kendall_to_param(CopulaFamily::gumbel, 0.25) ==
        doctest::Approx(4.0 / 3.0).epsilon(1e-14));
  CHECK(kendall_to_param(CopulaFamily::normal, 0.1) ==
        doctest::Approx(std::sin(0.05 * std::numbers::pi)).epsilon(1e-14));
  CHECK(kendall_to_param(CopulaFamily::student, 0.3) ==
        doctest::Approx(std::sin(0.15 * std::numbers::pi)).epsilon(1e-14));
  // tau = 0 boundaries
  CHECK(kendall_to_param(CopulaFamily::clayton, 0.0) == 0.0);
  CHECK(kendall_to_param(CopulaFamily::gumbel, 0.0) == 1.0);
  CHECK(kendall_to_param(CopulaFamily::normal, 0.0) == 0.0);
  CHECK(kendall_to_param(CopulaFamily::frank, 0.0) == 0.0);
}

TEST_CASE("debye function matches quadrature references") {
  CHECK(debye1(1.0) == doctest::Approx(0.7775046341122482).epsilon(1e-10));
  CHECK(debye1(5.0) == doctest::Approx(0.3208761977001461).epsilon(1e-10));
  CHECK_THROWS_AS(debye1(0.0), ConfigError);
  CHECK_THROWS_AS(debye1(-1.0), ConfigError);
}

TEST_CASE("frank parameter inverts its own tau formula") {
  for (double tau : {0.1, 0.3, 0.6}) {
    const double theta = kendall_to_param(CopulaFamily::frank, tau);
    CHECK(theta > 0.0);
    const double roundtrip = 1.0 - (4.0 / theta) * (1.0 - debye1(theta));
    CHECK(roundtrip == doctest::Approx(tau).epsilon(1e-9));
  }
}

TEST_CASE("copula samples live on the unit cube with the right shape") {
  for (const char* token :
       {"independence", "clayton", "gumbel", "frank", "normal", "student1"}) {
    const auto parsed = parse_copula_family(token);
    CopulaSpec spec;
    spec.family = parsed.first;
    spec.student_df = parsed.second;
    spec.tau = spec.family == CopulaFamily::independence ? 0.0 : 0.3;
    spec.dimension = 3;
    RandomStream stream(501);
    const Eigen::MatrixXd u = sample_copula(spec, 200, stream);
    CHECK(u.rows() == 200);
    CHECK(u.cols() == 3);
    CHECK(u.minCoeff() >= 0.0);
    CHECK(u.maxCoeff() <= 1.0);
  }
}

TEST_CASE("sampled dependence reproduces the requested tau") {
  // large-sample Kendall tau of each family at a pinned seed
  for (const char* token : {"clayton", "gumbel", "frank", "normal", "student3"}) {
    const auto parsed = parse_copula_family(token);
    CopulaSpec spec;
    spec.family = parsed.first;
    spec.student_df = parsed.second;
    spec.tau = 0.3;
    CHECK(std::abs(sampled_tau(spec, 10000, 503) - 0.3) <= 0.02);
  }
  CopulaSpec indep;
  CHECK(std::abs(sampled_tau(indep, 10000, 505)) <= 0.03);
}

TEST_CASE("copula spec validation") {
  CopulaSpec spec;
  spec.dimension = 0;
  RandomStream stream(507);
  CHECK_THROWS_AS(sample_copula(spec, 10, stream), ConfigError);
  spec.dimension = 2;
  spec.tau = -0.1;
  CHECK_THROWS_AS(sample_copula(spec, 10, stream), ConfigError);
  spec.tau = 1.0;
  CHECK_THROWS_AS(sample_copula(spec, 10, stream), ConfigError);
  spec.tau = 0.1;  // independence with nonzero tau is contradictory
  CHECK_THROWS_AS(sample_copula(spec, 10, stream), ConfigError);
  spec.family = CopulaFamily::clayton;
  CHECK_THROWS_AS(sample_copula(spec, 0, stream), ConfigError);
  spec.family = CopulaFamily::student;
  spec.student_df = 0;
  CHECK_THROWS_AS(sample_copula(spec, 10, stream), ConfigError);
}

TEST_CASE("clayton mass concentrates in the lower-left bin") {
  CopulaSpec spec;
  spec.family = CopulaFamily::clayton;
  spec.tau = 0.5;
  RandomStream stream(509);
  const Eigen::MatrixXi counts = copula_bin_counts(spec, 20000, 4, stream);
  CHECK(counts.rows() == 4);
  CHECK(counts.cols() == 4);
  CHECK(counts.sum() == 20000);
  // lower tail dependence: the (0,0) corner beats the independent 1/16 share
  CHECK(counts(0, 0) > 20000 / 16 * 2);
  // margins stay uniform: each row of bins holds about a quarter of the mass
  for (int r = 0; r < 4; ++r) {
    CHECK(counts.row(r).sum() == doctest::Approx(5000).epsilon(0.05));
    CHECK(counts.col(r).sum() == doctest::Approx(5000).epsilon(0.05));
  }
}
