#include "multidep/marginals.hpp"

#include <algorithm>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "multidep/errors.hpp"

namespace multidep {

namespace {

constexpr double kLargestBelowOne = 1.0 - 0x1p-53;

// Smallest k with Poisson(lambda) cdf >= u, by pmf accumulation. The open
// upper end is clamped so the loop terminates; once the pmf underflows the
// remaining tail is not representable and the current k is returned.
double poisson_quantile(double lambda, double u) {
  u = std::min(u, kLargestBelowOne);
  double pmf = std::exp(-lambda);
  double cdf = pmf;
  double k = 0.0;
  while (cdf < u) {
    k += 1.0;
    pmf *= lambda / k;
    cdf += pmf;
    if (pmf < 1e-300) {
      break;
    }
  }
  return k;
}

double student_t3_quantile(double p) {
  static const boost::math::students_t_distribution<double> law(3.0);
  p = std::clamp(p, std::numeric_limits<double>::min(), kLargestBelowOne);
  return boost::math::quantile(law, p);
}

}  // namespace

MarginalKind parse_marginal(const std::string& token) {
  if (token == "U") return MarginalKind::U;
  if (token == "P1") return MarginalKind::P1;
  if (token == "P20") return MarginalKind::P20;
  if (token == "RP") return MarginalKind::RP;
  if (token == "CA") return MarginalKind::CA;
  if (token == "SA") return MarginalKind::SA;
  if (token == "B") return MarginalKind::B;
  throw ConfigError("unknown marginal '" + token +
                    "' (expected U, P1, P20, RP, CA, SA, or B)");
}

std::string marginal_token(MarginalKind kind) {
  switch (kind) {
    case MarginalKind::U:
      return "U";
    case MarginalKind::P1:
      return "P1";
    case MarginalKind::P20:
      return "P20";
    case MarginalKind::RP:
      return "RP";
    case MarginalKind::CA:
      return "CA";
    case MarginalKind::SA:
      return "SA";
    case MarginalKind::B:
      return "B";
  }
  throw InternalError("unhandled marginal kind");
}

const std::vector<MarginalKind>& all_marginals() {
  static const std::vector<MarginalKind> kinds = {
      MarginalKind::U,  MarginalKind::P1, MarginalKind::P20, MarginalKind::RP,
      MarginalKind::CA, MarginalKind::SA, MarginalKind::B};
  return kinds;
}

double marginal_quantile(MarginalKind kind, double u) {
  if (!(u >= 0.0 && u <= 1.0)) {
    throw ConfigError("marginal quantile needs u in [0, 1]");
  }
  switch (kind) {
    case MarginalKind::U:
      return u;
    case MarginalKind::P1:
      return poisson_quantile(1.0, u);
    case MarginalKind::P20:
      return poisson_quantile(20.0, u);
    case MarginalKind::RP: {
      const double t = std::max(1.0 - u, 0x1p-53);
      return std::ceil(1.0 / (t * t * t)) - 1.0;
    }
    case MarginalKind::CA:
      return std::tan(std::numbers::pi * (u - 0.5));
    case MarginalKind::SA: {
      if (u >= 0.475 && u < 0.525) {
        return 0.0;
      }
      return student_t3_quantile(u < 0.475 ? u / 0.95 : (u - 0.05) / 0.95);
    }
    case MarginalKind::B:
      return u >= 0.5 ? 1.0 : 0.0;
  }
  throw InternalError("unhandled marginal kind");
}

}  // namespace multidep
