#include <cmath>
#include <limits>
#include <string>

#include "doctest.h"
#include "multidep/errors.hpp"
#include "multidep/marginals.hpp"
#include "oracles.hpp"

using namespace multidep;

TEST_CASE("marginal tokens round-trip through parse") {
  CHECK(all_marginals().size() == 7);
  for (MarginalKind kind : all_marginals()) {
    CHECK(parse_marginal(marginal_token(kind)) == kind);
  }
  CHECK(marginal_token(MarginalKind::P20) == "P20");
  CHECK_THROWS_AS(parse_marginal("p1"), ConfigError);
  CHECK_THROWS_AS(parse_marginal("normal"), ConfigError);
}

TEST_CASE("uniform quantile is the identity") {
  CHECK(marginal_quantile(MarginalKind::U, 0.0) == 0.0);
  CHECK(marginal_quantile(MarginalKind::U, 0.37) == 0.37);
  CHECK(marginal_quantile(MarginalKind::U, 1.0) == 1.0);
}

TEST_CASE("poisson quantiles step at the cdf knots") {
  // Poisson(1) cdf: 0.3679, 0.7358, 0.9197, 0.9810, ...
  CHECK(marginal_quantile(MarginalKind::P1, 0.3) == 0.0);
  CHECK(marginal_quantile(MarginalKind::P1, 0.4) == 1.0);
  CHECK(marginal_quantile(MarginalKind::P1, 0.9) == 2.0);
  CHECK(marginal_quantile(MarginalKind::P1, 0.95) == 3.0);
  CHECK(marginal_quantile(MarginalKind::P1, 1.0) >= 10.0);

  // Poisson(20) cdf passes 1/2 at k = 20
  CHECK(marginal_quantile(MarginalKind::P20, 0.5) == 20.0);
  CHECK(marginal_quantile(MarginalKind::P20, 0.001) <= 8.0);
  CHECK(marginal_quantile(MarginalKind::P20, 0.999) >= 33.0);
}

TEST_CASE("rounded pareto quantile counts cube-root tail steps") {
  CHECK(marginal_quantile(MarginalKind::RP, 0.0) == 0.0);
  CHECK(marginal_quantile(MarginalKind::RP, 0.5) == 7.0);
  CHECK(marginal_quantile(MarginalKind::RP, 7.0 / 8.0) == 511.0);
  const double top = marginal_quantile(MarginalKind::RP, 1.0);
  CHECK(std::isfinite(top));
  CHECK(top >= std::pow(2.0, 150.0));  // clamped open end, still enormous
}

TEST_CASE("cauchy quantile is the tangent map") {
  CHECK(marginal_quantile(MarginalKind::CA, 0.5) == 0.0);
  CHECK(marginal_quantile(MarginalKind::CA, 0.75) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(marginal_quantile(MarginalKind::CA, 0.25) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("student atom quantile has a flat spot of mass 0.05 at zero") {
  CHECK(marginal_quantile(MarginalKind::SA, 0.475) == 0.0);
  CHECK(marginal_quantile(MarginalKind::SA, 0.5) == 0.0);
  CHECK(marginal_quantile(MarginalKind::SA, 0.5249) == 0.0);
  CHECK(marginal_quantile(MarginalKind::SA, 0.4749) < 0.0);
  CHECK(marginal_quantile(MarginalKind::SA, 0.6) > 0.0);

  // continuous part: F(x) = 0.95 F_t3(x) + 0.05 1{x >= 0} inverts back
  for (double u : {0.1, 0.3, 0.46, 0.6, 0.9, 0.99}) {
    const double x = marginal_quantile(MarginalKind::SA, u);
    const double back = 0.95 * oracles::t3_cdf(x) + (x >= 0.0 ? 0.05 : 0.0);
    CHECK(back == doctest::Approx(u).epsilon(1e-9));
  }
}

TEST_CASE("bernoulli quantile thresholds at one half") {
  CHECK(marginal_quantile(MarginalKind::B, 0.49) == 0.0);
  CHECK(marginal_quantile(MarginalKind::B, 0.5) == 1.0);
  CHECK(marginal_quantile(MarginalKind::B, 1.0) == 1.0);
}

TEST_CASE("all quantiles are nondecreasing and reject u outside [0, 1]") {
  for (MarginalKind kind : all_marginals()) {
    double last = -std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 100; ++i) {
      const double q = marginal_quantile(kind, i / 100.0);
      CHECK(q >= last);
      last = q;
    }
    CHECK_THROWS_AS(marginal_quantile(kind, -0.01), ConfigError);
    CHECK_THROWS_AS(marginal_quantile(kind, 1.01), ConfigError);
    CHECK_THROWS_AS(marginal_quantile(kind, std::nan("")), ConfigError);
  }
}
