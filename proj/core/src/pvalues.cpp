#include "multidep/pvalues.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <boost/math/special_functions/gamma.hpp>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include "multidep/errors.hpp"
#include "multidep/parallel.hpp"

namespace multidep {

namespace {

constexpr char kFileMagic[] = "multidep-reference 1";

// Closed-form tails may underflow to 0; reports promise p in (0, 1].
double positive_probability(double p) {
  if (p > 1.0) {
    return 1.0;
  }
  if (p < std::numeric_limits<double>::min()) {
    return std::numeric_limits<double>::min();
  }
  return p;
}

std::uint64_t parse_header_uint(const std::string& line, const std::string& key,
                                const std::filesystem::path& path) {
  const std::string prefix = key + " ";
  if (line.size() <= prefix.size() || line.compare(0, prefix.size(), prefix) != 0) {
    throw DataError("reference file " + path.string() + ": expected '" + key +
                    " <value>' header line, got '" + line + "'");
  }
  std::uint64_t value = 0;
  const char* first = line.data() + prefix.size();
  const char* last = line.data() + line.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw DataError("reference file " + path.string() + ": bad " + key +
                    " value '" + line + "'");
  }
  return value;
}

std::string read_line(std::istream& in, const std::filesystem::path& path) {
  std::string line;
  if (!std::getline(in, line)) {
    throw DataError("reference file " + path.string() + ": truncated header");
  }
  return line;
}

// Scaled statistics of a resampling batch, one slot per resample so the
// result is independent of the thread schedule. Resample b permutes margins
// 2..n with draws from stream.substream(b).
std::vector<double> permuted_batch(const PreparedStatistic& prepared, int resamples,
                                   const RandomStream& stream, int threads) {
  const int n_margins = prepared.margin_count();
  const int n_rows = prepared.sample_size();
  std::vector<double> values(static_cast<std::size_t>(resamples));
  parallel_for(resamples, threads, [&](int b) {
    RandomStream sub = stream.substream(static_cast<std::uint64_t>(b));
    std::vector<std::vector<int>> perms(static_cast<std::size_t>(n_margins));
    perms[0].resize(static_cast<std::size_t>(n_rows));
    for (int j = 0; j < n_rows; ++j) {
      perms[0][static_cast<std::size_t>(j)] = j;
    }
    for (int i = 1; i < n_margins; ++i) {
      perms[static_cast<std::size_t>(i)] = sub.permutation(n_rows);
    }
    values[static_cast<std::size_t>(b)] = prepared.permuted_scaled(perms);
  });
  return values;
}

TestReport report_from(const StatisticResult& observed, std::string method,
                       double pvalue, long resamples, std::uint64_t seed) {
  TestReport report;
  report.value = observed.value;
  report.scaled = observed.scaled;
  report.method = std::move(method);
  report.pvalue = pvalue;
  report.resamples = resamples;
  report.seed = seed;
  report.degenerate_margins = observed.degenerate_margins;
  report.small_sample = observed.small_sample;
  return report;
}

void check_reference_key(const ReferenceDistribution& ref, const StatisticSpec& spec,
                         int margins, int sample_size) {
  if (ref.statistic_id() != spec.id() || ref.margins() != margins ||
      ref.sample_size() != sample_size) {
    throw DataError("reference key mismatch: file holds statistic " +
                    ref.statistic_id() + " n=" + std::to_string(ref.margins()) +
                    " N=" + std::to_string(ref.sample_size()) +
                    ", the test needs statistic " + spec.id() +
                    " n=" + std::to_string(margins) +
                    " N=" + std::to_string(sample_size));
  }
}

}  // namespace

ReferenceDistribution::ReferenceDistribution(std::string statistic_id, int margins,
                                             int sample_size, std::uint64_t seed,
                                             std::vector<double> samples)
    : statistic_id_(std::move(statistic_id)),
      margins_(margins),
      sample_size_(sample_size),
      seed_(seed),
      samples_(std::move(samples)) {
  if (samples_.empty()) {
    throw ConfigError("reference distribution needs at least one sample");
  }
  if (margins_ < 2) {
    throw ConfigError("reference distribution needs at least two margins");
  }
  if (sample_size_ < 1) {
    throw ConfigError("reference distribution needs N >= 1");
  }
  for (double v : samples_) {
    if (!std::isfinite(v)) {
      throw DataError("reference distribution holds a non-finite sample");
    }
  }
  std::sort(samples_.begin(), samples_.end());

  double sum = 0.0;
  for (double v : samples_) {
    sum += v;
  }
  mean_ = sum / static_cast<double>(samples_.size());
  if (samples_.size() > 1) {
    double sq = 0.0;
    for (double v : samples_) {
      const double d = v - mean_;
      sq += d * d;
    }
    variance_ = sq / static_cast<double>(samples_.size() - 1);
  }
}

double ReferenceDistribution::pvalue(double scaled) const {
  const auto first_ge = std::lower_bound(samples_.begin(), samples_.end(), scaled);
  const auto ge = static_cast<double>(samples_.end() - first_ge);
  return (1.0 + ge) / (static_cast<double>(samples_.size()) + 1.0);
}

ReferenceDistribution build_h0_reference(const StatisticSpec& spec,
                                         const Grouping& grouping,
                                         int sample_size, int count,
                                         const RandomStream& stream, int threads) {
  if (!grouping.all_univariate()) {
    throw ConfigError("multivariate margins need exact Monte Carlo");
  }
  if (count < 1000) {
    throw ConfigError("approximate H0 reference needs count >= 1000, got " +
                      std::to_string(count));
  }
  if (sample_size < 1) {
    throw ConfigError("approximate H0 reference needs N >= 1");
  }
  const int margins = grouping.margins();
  std::vector<double> samples(static_cast<std::size_t>(count));
  parallel_for(count, threads, [&](int r) {
    RandomStream sub = stream.substream(static_cast<std::uint64_t>(r));
    const UniformDraws uniforms = draw_uniforms(sample_size, margins, sub);
    const PreparedStatistic prepared(uniforms.values, grouping, spec);
    samples[static_cast<std::size_t>(r)] = prepared.observed().scaled;
  });
  return ReferenceDistribution(spec.id(), margins, sample_size, stream.seed(),
                               std::move(samples));
}

void write_reference(const std::filesystem::path& path,
                     const ReferenceDistribution& ref) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw DataError("cannot open " + path.string() + " for writing");
  }
  out << kFileMagic << '\n';
  out << "statistic " << ref.statistic_id() << '\n';
  out << "margins " << ref.margins() << '\n';
  out << "N " << ref.sample_size() << '\n';
  out << "count " << ref.count() << '\n';
  out << "seed " << ref.seed() << '\n';
  out << "data\n";
  for (double v : ref.samples()) {
    const auto bits = std::bit_cast<std::uint64_t>(v);
    char bytes[8];
    for (int s = 0; s < 8; ++s) {
      bytes[s] = static_cast<char>((bits >> (8 * s)) & 0xff);
    }
    out.write(bytes, 8);
  }
  out.flush();
  if (!out) {
    throw DataError("failed writing reference file " + path.string());
  }
}

ReferenceDistribution read_reference(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw DataError("cannot open reference file " + path.string());
  }
  if (read_line(in, path) != kFileMagic) {
    throw DataError("reference file " + path.string() +
                    ": unknown format (expected '" + std::string(kFileMagic) + "')");
  }
  const std::string statistic_line = read_line(in, path);
  const std::string prefix = "statistic ";
  if (statistic_line.size() <= prefix.size() ||
      statistic_line.compare(0, prefix.size(), prefix) != 0) {
    throw DataError("reference file " + path.string() + ": missing statistic id");
  }
  const std::string statistic_id = statistic_line.substr(prefix.size());
  const auto margins = parse_header_uint(read_line(in, path), "margins", path);
  const auto sample_size = parse_header_uint(read_line(in, path), "N", path);
  const auto count = parse_header_uint(read_line(in, path), "count", path);
  const auto seed = parse_header_uint(read_line(in, path), "seed", path);
  if (read_line(in, path) != "data") {
    throw DataError("reference file " + path.string() + ": missing data sentinel");
  }
  if (count < 1000) {
    throw DataError("reference file " + path.string() +
                    " must hold at least 1000 samples, has " + std::to_string(count));
  }
  if (margins > 1000000 || sample_size > 1000000000 || count > 1000000000) {
    throw DataError("reference file " + path.string() + ": implausible header");
  }

  std::vector<double> samples(static_cast<std::size_t>(count));
  for (auto& v : samples) {
    char bytes[8];
    if (!in.read(bytes, 8)) {
      throw DataError("reference file " + path.string() + ": truncated payload");
    }
    std::uint64_t bits = 0;
    for (int s = 0; s < 8; ++s) {
      bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes[s]))
              << (8 * s);
    }
    v = std::bit_cast<double>(bits);
  }
  char extra = 0;
  if (in.read(&extra, 1)) {
    throw DataError("reference file " + path.string() + ": trailing bytes");
  }
  return ReferenceDistribution(statistic_id, static_cast<int>(margins),
                               static_cast<int>(sample_size), seed,
                               std::move(samples));
}

TestReport permutation_pvalue(const Dataset& data, const UniformDraws& draws,
                              const StatisticSpec& spec, int resamples,
                              const RandomStream& stream, int threads) {
  if (resamples < 1) {
    throw ConfigError("permutation test needs B >= 1");
  }
  const PreparedStatistic prepared = prepare_statistic(data, draws, spec);
  const double observed = prepared.observed().scaled;
  const std::vector<double> batch = permuted_batch(prepared, resamples, stream, threads);
  long at_least = 0;
  for (double v : batch) {
    if (v >= observed) {
      ++at_least;
    }
  }
  const double p = (1.0 + static_cast<double>(at_least)) /
                   (static_cast<double>(resamples) + 1.0);
  return report_from(prepared.observed(), "permutation", p, resamples, stream.seed());
}

TestReport reference_pvalue(const Dataset& data, const UniformDraws& draws,
                            const StatisticSpec& spec,
                            const ReferenceDistribution& ref, std::uint64_t seed) {
  check_reference_key(ref, spec, data.margins(), data.observations());
  const StatisticResult observed = evaluate_statistic(data, draws, spec);
  return report_from(observed, "montecarlo-ref", ref.pvalue(observed.scaled),
                     ref.count(), seed);
}

double pearson_tail(double scaled, const LimitMoments& moments) {
  if (!(moments.variance > 0.0) || !(moments.third_cumulant > 0.0)) {
    throw InternalError("pearson moment entry is not right-skewed");
  }
  // Shifted gamma with matching first three cumulants.
  const double scale = moments.third_cumulant / (2.0 * moments.variance);
  const double shape = moments.variance / (scale * scale);
  const double shift = moments.mean - shape * scale;
  if (scaled <= shift) {
    return 1.0;
  }
  return positive_probability(boost::math::gamma_q(shape, (scaled - shift) / scale));
}

double pearson_uniform_pvalue(double scaled, int margins, const StatisticSpec& spec) {
  if (!spec.normalized_kind()) {
    throw ConfigError("pearson-uniform supports the normalized multivariance "
                      "statistics (normalized, normalized-total) only; use "
                      "--method montecarlo-ref");
  }
  if (spec.kernel.kind != KernelKind::euclidean) {
    throw ConfigError("pearson-uniform is calibrated for the euclidean kernel "
                      "only; use --method montecarlo-ref");
  }
  return pearson_tail(scaled, pearson_h0_moments(spec.kind, margins));
}

TestReport pearson_uniform_report(const Dataset& data, const UniformDraws& draws,
                                  const StatisticSpec& spec, std::uint64_t seed) {
  if (!data.grouping().all_univariate()) {
    throw ConfigError("pearson-uniform is not applicable to multivariate "
                      "margins; use --method montecarlo-ref");
  }
  const StatisticResult observed = evaluate_statistic(data, draws, spec);
  const double p = pearson_uniform_pvalue(observed.scaled, data.margins(), spec);
  return report_from(observed, "pearson-uniform", p, 0, seed);
}

GammaFit fit_gamma(double mean, double variance) {
  if (!(variance > 0.0)) {
    throw ConfigError("gamma method needs a positive H0 variance");
  }
  if (!(mean > 0.0)) {
    throw ConfigError("gamma method needs a positive H0 mean");
  }
  return GammaFit{mean * mean / variance, variance / mean};
}

double gamma_pvalue(double scaled, double mean, double variance) {
  const GammaFit fit = fit_gamma(mean, variance);
  if (scaled <= 0.0) {
    return 1.0;
  }
  return positive_probability(boost::math::gamma_q(fit.shape, scaled / fit.scale));
}

TestReport gamma_report(const Dataset& data, const UniformDraws& draws,
                        const StatisticSpec& spec, const ReferenceDistribution* ref,
                        int moment_resamples, const RandomStream& stream,
                        int threads) {
  const PreparedStatistic prepared = prepare_statistic(data, draws, spec);
  double mean = 0.0;
  double variance = 0.0;
  long resamples = 0;
  if (ref != nullptr) {
    check_reference_key(*ref, spec, data.margins(), data.observations());
    mean = ref->mean();
    variance = ref->variance();
    resamples = ref->count();
  } else {
    if (moment_resamples < 2) {
      throw ConfigError("gamma moment batch needs at least 2 resamples");
    }
    const std::vector<double> batch =
        permuted_batch(prepared, moment_resamples, stream, threads);
    double sum = 0.0;
    for (double v : batch) {
      sum += v;
    }
    mean = sum / static_cast<double>(batch.size());
    double sq = 0.0;
    for (double v : batch) {
      const double d = v - mean;
      sq += d * d;
    }
    variance = sq / static_cast<double>(batch.size() - 1);
    resamples = moment_resamples;
  }
  const double p = gamma_pvalue(prepared.observed().scaled, mean, variance);
  return report_from(prepared.observed(), "gamma", p, resamples, stream.seed());
}

}  // namespace multidep
