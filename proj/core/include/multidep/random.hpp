#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace multidep {

// Deterministic random stream identified by (seed, substream). Identical
// (seed, substream) pairs produce identical draw sequences on every platform;
// distinct substream indices give statistically independent streams.
//
// Substream derivation is a pure counter-based split: the pair is mixed into
// a 64-bit state by two rounds of the splitmix64 finalizer, which seeds a
// mt19937_64 engine. substream(k) derives child k from this stream's mixed
// state, so children are nestable and schedule-independent.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed, std::uint64_t substream = 0);

  RandomStream substream(std::uint64_t k) const;

  std::uint64_t seed() const { return seed_; }
  std::uint64_t substream_index() const { return substream_; }

  std::uint64_t bits();

  // Uniform on [0, 1) with 53-bit resolution.
  double uniform();
  // Standard normal (Box-Muller, one spare cached).
  double normal();
  // Exponential with rate 1.
  double exponential();
  // Gamma with the given shape and scale 1 (Marsaglia-Tsang).
  double gamma(double shape);
  double chi_square(double degrees_of_freedom);
  // Positive stable with index alpha in (0, 1); Laplace transform exp(-s^alpha)
  // (Chambers-Mallows-Stuck).
  double positive_stable(double alpha);
  // Logarithmic series on {1, 2, ...} with pmf p^k / (-k log(1-p)), p in (0,1)
  // (Kemp's accelerated inversion).
  std::uint64_t log_series(double p);
  // Uniformly random permutation of {0, ..., n-1} (Fisher-Yates).
  std::vector<int> permutation(int n);

 private:
  std::uint64_t seed_;
  std::uint64_t substream_;
  std::uint64_t origin_;
  std::mt19937_64 engine_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace multidep
