#include "multidep/random.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "multidep/errors.hpp"

namespace multidep {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t avalanche(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

std::uint64_t mix(std::uint64_t seed, std::uint64_t substream) {
  return avalanche(avalanche(seed + kGolden) ^ (substream * 0xDA942042E4DD58B5ULL + kGolden));
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t substream)
    : seed_(seed), substream_(substream), origin_(mix(seed, substream)), engine_(origin_) {}

RandomStream RandomStream::substream(std::uint64_t k) const {
  return RandomStream(origin_, k);
}

std::uint64_t RandomStream::bits() { return engine_(); }

double RandomStream::uniform() {
  return static_cast<double>(bits() >> 11) * 0x1.0p-53;
}

double RandomStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_normal_;
  }
  const double u1 = 1.0 - uniform();  // (0, 1], keeps log finite
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * std::numbers::pi * u2;
  spare_normal_ = r * std::sin(a);
  has_spare_ = true;
  return r * std::cos(a);
}

double RandomStream::exponential() {
  return -std::log(1.0 - uniform());
}

double RandomStream::gamma(double shape) {
  if (!(shape > 0.0)) {
    throw ConfigError("gamma shape must be positive");
  }
  if (shape < 1.0) {
    // Boost the shape and correct with a power of a uniform.
    const double u = uniform();
    return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x;
    double v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform();
    if (u < 1.0 - 0.0331 * x * x * x * x) {
      return d * v;
    }
    if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) {
      return d * v;
    }
  }
}

double RandomStream::chi_square(double degrees_of_freedom) {
  if (!(degrees_of_freedom > 0.0)) {
    throw ConfigError("chi-square degrees of freedom must be positive");
  }
  return 2.0 * gamma(degrees_of_freedom / 2.0);
}

double RandomStream::positive_stable(double alpha) {
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    throw ConfigError("positive stable index must lie in (0, 1)");
  }
  const double v = std::numbers::pi * (uniform() - 0.5);  // (-pi/2, pi/2)
  double w;
  do {
    w = exponential();
  } while (w == 0.0);
  const double t = alpha * (v + std::numbers::pi / 2.0);
  return std::sin(t) / std::pow(std::cos(v), 1.0 / alpha) *
         std::pow(std::cos(v - t) / w, (1.0 - alpha) / alpha);
}

std::uint64_t RandomStream::log_series(double p) {
  if (!(p > 0.0) || !(p < 1.0)) {
    throw ConfigError("logarithmic series parameter must lie in (0, 1)");
  }
  const double h = std::log1p(-p);  // log(1 - p)
  const double u2 = uniform();
  if (u2 >= p) {
    return 1;
  }
  double u1;
  do {
    u1 = uniform();
  } while (u1 == 0.0);
  const double q = -std::expm1(u1 * h);  // 1 - (1-p)^u1, in (0, p)
  if (u2 > 0.0 && u2 < q * q) {
    return static_cast<std::uint64_t>(1.0 + std::log(u2) / std::log(q));
  }
  return u2 < q ? 2 : 1;
}

std::vector<int> RandomStream::permutation(int n) {
  std::vector<int> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), 0);
  for (int i = n - 1; i > 0; --i) {
    const int j = static_cast<int>(uniform() * (i + 1));  // uniform < 1, so j <= i
    std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
  }
  return idx;
}

}  // namespace multidep
