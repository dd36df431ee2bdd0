#include "multidep/copulas.hpp"

#include <boost/math/distributions/students_t.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <charconv>
#include <cmath>
#include <numbers>
#include <string>

#include "multidep/errors.hpp"

namespace multidep {

namespace {

double standard_normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double frank_tau(double theta) {
  return 1.0 - 4.0 / theta * (1.0 - debye1(theta));
}

// tau(theta) is continuous and strictly increasing from 0 (theta -> 0) to 1
// (theta -> inf), so a sign-change bracket always exists.
double frank_theta_for_tau(double tau) {
  double lo = 1e-10;
  double hi = 1.0;
  while (frank_tau(hi) < tau) {
    hi *= 2.0;
    if (hi > 1e6) {
      throw ConfigError("frank copula tau too close to 1");
    }
  }
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double t = frank_tau(mid);
    if (std::abs(t - tau) <= 1e-10) {
      return mid;
    }
    if (t < tau) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  throw InternalError("frank tau inversion did not converge");
}

void validate(const CopulaSpec& spec) {
  if (spec.dimension < 1) {
    throw ConfigError("copula dimension must be positive");
  }
  if (!(spec.tau >= 0.0) || spec.tau >= 1.0) {
    throw ConfigError("Kendall tau must lie in [0, 1)");
  }
  if (spec.family == CopulaFamily::independence && spec.tau != 0.0) {
    throw ConfigError("independence copula requires tau = 0");
  }
  if (spec.family == CopulaFamily::student && spec.student_df < 1) {
    throw ConfigError("student copula needs df >= 1");
  }
}

}  // namespace

std::string CopulaSpec::label() const {
  switch (family) {
    case CopulaFamily::independence:
      return "independence";
    case CopulaFamily::clayton:
      return "clayton";
    case CopulaFamily::gumbel:
      return "gumbel";
    case CopulaFamily::frank:
      return "frank";
    case CopulaFamily::normal:
      return "normal";
    case CopulaFamily::student:
      return "student" + std::to_string(student_df);
  }
  throw InternalError("unhandled copula family");
}

std::pair<CopulaFamily, int> parse_copula_family(const std::string& token) {
  if (token == "independence") {
    return {CopulaFamily::independence, 3};
  }
  if (token == "clayton") {
    return {CopulaFamily::clayton, 3};
  }
  if (token == "gumbel") {
    return {CopulaFamily::gumbel, 3};
  }
  if (token == "frank") {
    return {CopulaFamily::frank, 3};
  }
  if (token == "normal") {
    return {CopulaFamily::normal, 3};
  }
  if (token.rfind("student", 0) == 0) {
    if (token.size() == 7) {
      return {CopulaFamily::student, 3};
    }
    int df = 0;
    const char* first = token.data() + 7;
    const char* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, df);
    if (ec == std::errc() && ptr == last && df >= 1) {
      return {CopulaFamily::student, df};
    }
  }
  throw ConfigError("unknown copula family '" + token +
                    "' (expected independence, clayton, gumbel, frank, normal, "
                    "or student<df>)");
}

double debye1(double x) {
  if (!(x > 0.0)) {
    throw ConfigError("debye1 needs x > 0");
  }
  const auto integrand = [](double t) {
    // t / (e^t - 1), continuously extended to 1 at t = 0.
    if (t < 1e-12) {
      return 1.0 - 0.5 * t;
    }
    return t / std::expm1(t);
  };
  const double integral = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      integrand, 0.0, x, 10, 1e-12);
  return integral / x;
}

double kendall_to_param(CopulaFamily family, double tau) {
  if (!(tau >= 0.0) || tau >= 1.0) {
    throw ConfigError("Kendall tau must lie in [0, 1)");
  }
  switch (family) {
    case CopulaFamily::independence:
      if (tau != 0.0) {
        throw ConfigError("independence copula requires tau = 0");
      }
      return 0.0;
    case CopulaFamily::clayton:
      return 2.0 * tau / (1.0 - tau);
    case CopulaFamily::gumbel:
      return 1.0 / (1.0 - tau);
    case CopulaFamily::normal:
    case CopulaFamily::student:
      return std::sin(std::numbers::pi * tau / 2.0);
    case CopulaFamily::frank:
      if (tau == 0.0) {
        return 0.0;
      }
      return frank_theta_for_tau(tau);
  }
  throw InternalError("unhandled copula family");
}

Eigen::MatrixXd sample_copula(const CopulaSpec& spec, int rows, RandomStream& stream) {
  validate(spec);
  if (rows < 1) {
    throw ConfigError("copula sample needs at least one row");
  }
  const int d = spec.dimension;
  Eigen::MatrixXd u(rows, d);

  if (spec.family == CopulaFamily::independence || spec.tau == 0.0) {
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < d; ++c) {
        u(r, c) = stream.uniform();
      }
    }
    return u;
  }

  const double param = kendall_to_param(spec.family, spec.tau);
  switch (spec.family) {
    case CopulaFamily::normal: {
      const double shared = std::sqrt(param);
      const double own = std::sqrt(1.0 - param);
      for (int r = 0; r < rows; ++r) {
        const double z0 = stream.normal();
        for (int c = 0; c < d; ++c) {
          u(r, c) = standard_normal_cdf(shared * z0 + own * stream.normal());
        }
      }
      return u;
    }
    case CopulaFamily::student: {
      const double df = static_cast<double>(spec.student_df);
      const boost::math::students_t_distribution<double> law(df);
      const double shared = std::sqrt(param);
      const double own = std::sqrt(1.0 - param);
      for (int r = 0; r < rows; ++r) {
        const double z0 = stream.normal();
        const double mix = std::sqrt(stream.chi_square(df) / df);
        for (int c = 0; c < d; ++c) {
          const double t = (shared * z0 + own * stream.normal()) / mix;
          u(r, c) = boost::math::cdf(law, t);
        }
      }
      return u;
    }
    case CopulaFamily::clayton: {
      const double inv_theta = 1.0 / param;
      for (int r = 0; r < rows; ++r) {
        const double frailty = stream.gamma(inv_theta);
        for (int c = 0; c < d; ++c) {
          u(r, c) = std::pow(1.0 + stream.exponential() / frailty, -inv_theta);
        }
      }
      return u;
    }
    case CopulaFamily::gumbel: {
      const double alpha = 1.0 / param;
      for (int r = 0; r < rows; ++r) {
        const double frailty = stream.positive_stable(alpha);
        for (int c = 0; c < d; ++c) {
          u(r, c) = std::exp(-std::pow(stream.exponential() / frailty, alpha));
        }
      }
      return u;
    }
    case CopulaFamily::frank: {
      // Logarithmic-series frailty; the Laplace transform of log-series(p)
      // with p = 1 - e^-theta is exactly the frank generator inverse.
      const double p = -std::expm1(-param);
      for (int r = 0; r < rows; ++r) {
        const double frailty = static_cast<double>(stream.log_series(p));
        for (int c = 0; c < d; ++c) {
          const double t = std::exp(-stream.exponential() / frailty);
          u(r, c) = -std::log1p(-p * t) / param;
        }
      }
      return u;
    }
    case CopulaFamily::independence:
      break;  // handled above
  }
  throw InternalError("unhandled copula family");
}

}  // namespace multidep
