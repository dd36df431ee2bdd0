#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "multidep/dataset.hpp"
#include "multidep/random.hpp"
#include "multidep/statistic.hpp"

namespace multidep {

// Sorted Monte-Carlo H0 sample of a scaled statistic plus the metadata that
// keys it to matching tests (statistic id, margin count, sample size).
class ReferenceDistribution {
 public:
  // Sorts the samples; count must be >= 1. The operational entry points
  // (build_h0_reference, read_reference) insist on count >= 1000, the
  // constructor stays permissive so the counting arithmetic of pvalue() is
  // testable at any size.
  ReferenceDistribution(std::string statistic_id, int margins, int sample_size,
                        std::uint64_t seed, std::vector<double> samples);

  const std::string& statistic_id() const { return statistic_id_; }
  int margins() const { return margins_; }
  int sample_size() const { return sample_size_; }
  std::uint64_t seed() const { return seed_; }
  const std::vector<double>& samples() const { return samples_; }
  int count() const { return static_cast<int>(samples_.size()); }
  // Sample mean and unbiased variance of the stored scaled statistics; these
  // are the default H0 moments of the gamma method.
  double mean() const { return mean_; }
  double variance() const { return variance_; }

  // Add-one Monte-Carlo p-value: (1 + #{samples >= scaled}) / (count + 1),
  // always inside [1/(count+1), 1].
  double pvalue(double scaled) const;

 private:
  std::string statistic_id_;
  int margins_ = 0;
  int sample_size_ = 0;
  std::uint64_t seed_ = 0;
  std::vector<double> samples_;
  double mean_ = 0.0;
  double variance_ = 0.0;
};

// Approximate Monte-Carlo H0 reference: the scaled statistic evaluated on
// count independent draws of n Uniform(0,1) columns, without the transform.
// Valid for any margins once the test itself transforms, because under
// independence the transformed data are again (discretized) uniforms; this is
// what makes one cached file reusable across marginal laws. Univariate
// margins only; count >= 1000.
ReferenceDistribution build_h0_reference(const StatisticSpec& spec,
                                         const Grouping& grouping,
                                         int sample_size, int count,
                                         const RandomStream& stream,
                                         int threads = 1);

// Text header (format version, statistic id, margins, N, count, seed)
// followed by a "data" sentinel line and count little-endian IEEE-754
// doubles. Writing is deterministic, so equal inputs give identical bytes.
void write_reference(const std::filesystem::path& path,
                     const ReferenceDistribution& ref);
ReferenceDistribution read_reference(const std::filesystem::path& path);

struct TestReport {
  double value = 0.0;
  double scaled = 0.0;
  std::string method;   // permutation | montecarlo-ref | pearson-uniform | gamma
  double pvalue = 1.0;  // always in (0, 1]
  long resamples = 0;   // B, reference count, or moment batch size
  std::uint64_t seed = 0;
  std::vector<int> degenerate_margins;
  bool small_sample = false;  // dhsic with N < 2n
};

// Resampling test: the transform runs once, then margins 2..n are row-permuted
// independently `resamples` times (margin 1 stays fixed; permuting all margins
// alike is a no-op). p = (1 + #{permuted scaled >= observed scaled}) /
// (resamples + 1). Resample b draws from stream.substream(b), so the result
// does not depend on the thread count.
TestReport permutation_pvalue(const Dataset& data, const UniformDraws& draws,
                              const StatisticSpec& spec, int resamples,
                              const RandomStream& stream, int threads = 1);

// Monte-Carlo p-value from a cached reference whose key (statistic id,
// margins, N) must match; seed is echoed into the report.
TestReport reference_pvalue(const Dataset& data, const UniformDraws& draws,
                            const StatisticSpec& spec,
                            const ReferenceDistribution& ref,
                            std::uint64_t seed);

// Exact limit constants of one uniform/euclidean margin factor: the
// eigenvalue power sums sum(lambda^r) of its centered distance operator,
// whose eigenvalues are 2/(k pi)^2, so the sums are 2 zeta(2r) (2/pi^2)^r.
// The factor's limit law sum(lambda_k Z_k^2) therefore has mean 1/3,
// variance 2 * (2/45) and third cumulant 8 * (8/945); normalizing the factor
// divides each lambda by 1/3. The finite-sample trio is surfaced as metadata
// only; its correction formula lives in literature this artifact does not
// reproduce, so it never enters the tail computation.
namespace limitconst {
inline constexpr double kFactorEigenvalueSum = 1.0 / 3.0;
inline constexpr double kFactorEigenvalueSquareSum = 2.0 / 45.0;
inline constexpr double kFactorEigenvalueCubeSum = 8.0 / 945.0;
inline constexpr double kFiniteSampleB = 1.0 / 6.0;
inline constexpr double kFiniteSampleC = 7.0 / 60.0;
inline constexpr double kFiniteSampleD = 1.0 / 9.0;
}  // namespace limitconst

// First three cumulants of the H0 distribution of a scaled statistic.
struct LimitMoments {
  double mean = 0.0;
  double variance = 0.0;
  double third_cumulant = 0.0;
};

// Calibrated moment table for the pearson-uniform method, one entry per
// (normalized statistic kind, margin count). Misses throw a ConfigError that
// directs to montecarlo-ref.
LimitMoments pearson_h0_moments(StatisticKind kind, int margins);
const char* pearson_table_version();

// Upper tail of the Pearson type III (shifted gamma) distribution fitted to
// the three cumulants; monotone nonincreasing in scaled, range (0, 1].
double pearson_tail(double scaled, const LimitMoments& moments);

// Closed-form p-value for normalized multivariance statistics with the
// euclidean kernel on univariate margins.
double pearson_uniform_pvalue(double scaled, int margins,
                              const StatisticSpec& spec);
TestReport pearson_uniform_report(const Dataset& data, const UniformDraws& draws,
                                  const StatisticSpec& spec, std::uint64_t seed);

struct GammaFit {
  double shape = 0.0;
  double scale = 0.0;
};
// Moment inversion: mean = shape * scale, variance = shape * scale^2.
GammaFit fit_gamma(double mean, double variance);

// Upper tail of the gamma distribution with the given H0 mean and variance.
double gamma_pvalue(double scaled, double mean, double variance);

// H0 moments come from the reference when one is supplied (key-checked),
// otherwise from a small permutation batch of moment_resamples >= 2 permuted
// statistics.
TestReport gamma_report(const Dataset& data, const UniformDraws& draws,
                        const StatisticSpec& spec,
                        const ReferenceDistribution* ref, int moment_resamples,
                        const RandomStream& stream, int threads = 1);

}  // namespace multidep
