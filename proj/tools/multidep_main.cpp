// Command line front end: every subcommand is deterministic given its full
// flag set, and machine-readable output is line-oriented key=value.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "multidep/bench.hpp"
#include "multidep/copulas.hpp"
#include "multidep/dataset.hpp"
#include "multidep/errors.hpp"
#include "multidep/marginals.hpp"
#include "multidep/pvalues.hpp"
#include "multidep/random.hpp"
#include "multidep/simulate.hpp"
#include "multidep/statistic.hpp"
#include "multidep/transform.hpp"

namespace {

using namespace multidep;

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    if (!item.empty()) items.push_back(item);
  }
  if (items.empty()) throw ConfigError("empty list: '" + text + "'");
  return items;
}

int count_csv_columns(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  std::string header;
  if (!std::getline(in, header)) throw DataError(path.string() + " is empty");
  int columns = 1;
  for (char c : header)
    if (c == ',') ++columns;
  return columns;
}

// Shared statistic flags. The kernel defaults per statistic: dhsic needs a
// bounded kernel, so it defaults to gaussian(delta); everything else to
// euclidean. An explicit --kernel always wins.
struct StatisticFlags {
  std::string statistic = "normalized-total";
  std::string kernel;  // empty = per-statistic default
  double delta = 3.0;
  bool copula = true;
};

void add_statistic_flags(CLI::App* cmd, StatisticFlags& flags,
                         bool list_allowed = false) {
  cmd->add_option("--statistic", flags.statistic,
                  list_allowed
                      ? "Statistic tokens, comma separated (multivariance, "
                        "total, m2, m3, ..., normalized, normalized-total, dhsic)"
                      : "Statistic token (multivariance, total, m2, m3, ..., "
                        "normalized, normalized-total, dhsic)")
      ->capture_default_str();
  cmd->add_option("--kernel", flags.kernel,
                  "Kernel: euclidean or gaussian (default: euclidean, "
                  "gaussian for dhsic)");
  cmd->add_option("--delta", flags.delta, "Gaussian kernel bandwidth")
      ->capture_default_str();
  cmd->add_flag("--copula,!--no-copula", flags.copula,
                "Apply the empirical distributional transform first "
                "(default on; --no-copula tests the classical statistic)");
}

StatisticSpec make_spec(const std::string& token, const StatisticFlags& flags) {
  const auto [kind, m] = parse_statistic(token);
  StatisticSpec spec;
  spec.kind = kind;
  spec.m = m;
  spec.copula = flags.copula;
  if (!flags.kernel.empty()) {
    spec.kernel = parse_kernel(flags.kernel, flags.delta);
  } else if (kind == StatisticKind::dhsic) {
    spec.kernel = KernelSpec::gaussian(flags.delta);
  } else {
    spec.kernel = KernelSpec::euclidean();
  }
  return spec;
}

void emit(std::ostream& out, const TestReport& report, const StatisticSpec& spec,
          int sample_size, int margins) {
  // shortest representation that parses back to the same double
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  out << "statistic=" << spec.id() << "\n";
  out << "copula=" << (spec.copula ? 1 : 0) << "\n";
  out << "N=" << sample_size << "\n";
  out << "margins=" << margins << "\n";
  out << "value=" << report.value << "\n";
  out << "scaled=" << report.scaled << "\n";
  out << "pvalue=" << report.pvalue << "\n";
  out << "method=" << report.method << "\n";
  out << "resamples=" << report.resamples << "\n";
  out << "seed=" << report.seed << "\n";
  out << "degenerate_margins=";
  for (std::size_t i = 0; i < report.degenerate_margins.size(); ++i) {
    if (i) out << ",";
    out << report.degenerate_margins[i];
  }
  out << "\n";
  out << "small_sample=" << (report.small_sample ? 1 : 0) << "\n";
}

struct CommonIo {
  std::string in_path;
  std::string grouping_text;
  std::string out_path;
  std::uint64_t seed = 0;
  int threads = 1;
};

int cmd_transform(const CommonIo& io) {
  const Grouping grouping = Grouping::parse(io.grouping_text);
  const Dataset data = load_dataset(io.in_path, grouping);
  const RandomStream root(io.seed);
  RandomStream draw_stream = root.substream(0);
  const UniformDraws draws =
      draw_uniforms(data.observations(), data.columns(), draw_stream);
  const TransformedDataset transformed = empirical_transform(data, draws);
  write_csv(io.out_path, transformed.values, data.column_names());
  std::cout << "in=" << io.in_path << "\n"
            << "out=" << io.out_path << "\n"
            << "N=" << data.observations() << "\n"
            << "margins=" << data.margins() << "\n"
            << "seed=" << io.seed << "\n";
  return 0;
}

int cmd_test(const CommonIo& io, const StatisticFlags& stat_flags,
             const std::string& method, int resamples, bool resamples_given,
             const std::string& ref_path) {
  const Grouping grouping =
      io.grouping_text.empty()
          ? Grouping::univariate(count_csv_columns(io.in_path))
          : Grouping::parse(io.grouping_text);
  const Dataset data = load_dataset(io.in_path, grouping);
  const StatisticSpec spec = make_spec(stat_flags.statistic, stat_flags);

  const RandomStream root(io.seed);
  RandomStream draw_stream = root.substream(0);
  const UniformDraws draws =
      draw_uniforms(data.observations(), data.columns(), draw_stream);
  const RandomStream method_stream = root.substream(1);

  TestReport report;
  if (method == "permutation") {
    report = permutation_pvalue(data, draws, spec, resamples, method_stream,
                                io.threads);
  } else if (method == "montecarlo-ref") {
    if (ref_path.empty())
      throw ConfigError("montecarlo-ref needs --ref with a reference file");
    const ReferenceDistribution ref = read_reference(ref_path);
    report = reference_pvalue(data, draws, spec, ref, io.seed);
  } else if (method == "pearson-uniform") {
    report = pearson_uniform_report(data, draws, spec, io.seed);
  } else if (method == "gamma") {
    std::optional<ReferenceDistribution> ref;
    if (!ref_path.empty()) ref.emplace(read_reference(ref_path));
    const int moment_batch = resamples_given ? resamples : 100;
    report = gamma_report(data, draws, spec, ref ? &*ref : nullptr,
                          moment_batch, method_stream, io.threads);
  } else {
    throw ConfigError("unknown method '" + method +
                      "' (permutation, montecarlo-ref, pearson-uniform, gamma)");
  }
  report.seed = io.seed;  // echo the flag, not the derived substream seed

  emit(std::cout, report, spec, data.observations(), data.margins());
  if (!io.out_path.empty()) {
    std::ofstream out(io.out_path);
    if (!out) throw DataError("cannot write " + io.out_path);
    emit(out, report, spec, data.observations(), data.margins());
  }
  return 0;
}

int cmd_h0_ref(const CommonIo& io, const StatisticFlags& stat_flags, int margins,
               int sample_size, int count) {
  const Grouping grouping = io.grouping_text.empty()
                                ? Grouping::univariate(margins)
                                : Grouping::parse(io.grouping_text);
  const StatisticSpec spec = make_spec(stat_flags.statistic, stat_flags);
  // The root stream goes in directly so the file records the flag seed.
  const ReferenceDistribution ref = build_h0_reference(
      spec, grouping, sample_size, count, RandomStream(io.seed), io.threads);
  write_reference(io.out_path, ref);
  std::cout << "statistic=" << ref.statistic_id() << "\n"
            << "margins=" << ref.margins() << "\n"
            << "N=" << ref.sample_size() << "\n"
            << "count=" << ref.count() << "\n"
            << "seed=" << ref.seed() << "\n"
            << "file=" << io.out_path << "\n";
  return 0;
}

int cmd_power(const CommonIo& io, const StatisticFlags& stat_flags,
              const std::string& families_text, const std::string& taus_text,
              const std::string& marginals_text, const std::string& method,
              int margins, int sample_size, int repetitions, double alpha,
              int permutation_count, int reference_count,
              const std::string& tsv_path) {
  PowerConfig config;
  config.method = method;
  config.margins = margins;
  config.sample_size = sample_size;
  config.repetitions = repetitions;
  config.alpha = alpha;
  config.permutation_count = permutation_count;
  config.reference_count = reference_count;
  config.threads = io.threads;

  std::vector<double> taus;
  for (const std::string& t : split_list(taus_text)) {
    try {
      taus.push_back(std::stod(t));
    } catch (const std::exception&) {
      throw ConfigError("bad tau value '" + t + "'");
    }
  }

  for (const std::string& family_token : split_list(families_text)) {
    const auto [family, df] = parse_copula_family(family_token);
    if (family == CopulaFamily::independence) {
      CopulaSpec spec;
      spec.family = family;
      spec.tau = 0.0;
      spec.dimension = margins;
      config.copulas.push_back(spec);
      continue;
    }
    for (double tau : taus) {
      CopulaSpec spec;
      spec.family = family;
      spec.tau = tau;
      spec.dimension = margins;
      spec.student_df = df;
      config.copulas.push_back(spec);
    }
  }
  for (const std::string& token : split_list(marginals_text))
    config.marginals.push_back(parse_marginal(token));
  for (const std::string& token : split_list(stat_flags.statistic))
    config.statistics.push_back(make_spec(token, stat_flags));

  const RandomStream root(io.seed);
  const PowerTable table = power_study(config, root);
  const std::string text = power_table_text(table);
  std::cout << text;
  if (!io.out_path.empty()) {
    std::ofstream out(io.out_path);
    if (!out) throw DataError("cannot write " + io.out_path);
    out << text;
  }
  if (!tsv_path.empty()) {
    std::ofstream out(tsv_path);
    if (!out) throw DataError("cannot write " + tsv_path);
    out << power_table_tsv(table);
  }
  return 0;
}

int cmd_bench(const CommonIo& io, const StatisticFlags& stat_flags, int margins,
              int sample_size, int runs, int permutation_count,
              int reference_count, const std::string& ref_path) {
  BenchConfig config;
  config.spec = make_spec(stat_flags.statistic, stat_flags);
  config.margins = margins;
  config.sample_size = sample_size;
  config.runs = runs;
  config.permutation_count = permutation_count;
  config.reference_count = reference_count;
  config.reference_path = ref_path;
  config.seed = io.seed;
  config.threads = io.threads;
  const BenchReport report = run_bench(config);

  std::ostringstream out;
  out << "statistic=" << config.spec.id() << "\n"
      << "N=" << report.sample_size << "\n"
      << "margins=" << report.margins << "\n"
      << "runs=" << runs << "\n"
      << "seed=" << report.seed << "\n"
      << "median_transform_seconds=" << report.median_transform_seconds << "\n";
  for (const BenchResult& method : report.methods) {
    out << "median_seconds." << method.method << "=" << method.median_seconds
        << "\n"
        << "resamples." << method.method << "=" << method.resamples << "\n";
  }
  std::cout << out.str();
  if (!io.out_path.empty()) {
    std::ofstream file(io.out_path);
    if (!file) throw DataError("cannot write " + io.out_path);
    file << out.str();
  }
  return 0;
}

int cmd_copula_bins(const CommonIo& io, const std::string& family_token,
                    double tau, int rows, int bins) {
  const auto [family, df] = parse_copula_family(family_token);
  CopulaSpec spec;
  spec.family = family;
  spec.tau = tau;
  spec.dimension = 2;
  spec.student_df = df;
  RandomStream stream(io.seed);
  const Eigen::MatrixXi counts = copula_bin_counts(spec, rows, bins, stream);

  std::ostringstream out;
  out << "# copula=" << spec.label() << " tau=" << tau << " rows=" << rows
      << " bins=" << bins << " seed=" << io.seed << "\n";
  for (int i = 0; i < counts.rows(); ++i) {
    for (int j = 0; j < counts.cols(); ++j) {
      if (j) out << "\t";
      out << counts(i, j);
    }
    out << "\n";
  }
  std::cout << out.str();
  if (!io.out_path.empty()) {
    std::ofstream file(io.out_path);
    if (!file) throw DataError("cannot write " + io.out_path);
    file << out.str();
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Margin-free independence tests: distance multivariance and dHSIC on "
      "the empirical distributional transform"};
  app.require_subcommand(1);

  CommonIo io;
  StatisticFlags stat_flags;
  StatisticFlags power_flags;
  power_flags.statistic = "normalized-total,dhsic";
  std::string method = "permutation";
  std::string power_method = "montecarlo-ref";
  std::string ref_path;
  std::string bench_ref = "multidep-bench.ref";
  int resamples = 300;
  int margins = 5;
  int sample_size = 100;
  int repetitions = 1000;
  int count = 100000;
  double alpha = 0.05;
  int reference_count = 100000;
  int runs = 100;
  std::string families = "independence,clayton,gumbel,frank,normal,student1";
  std::string taus = "0.1";
  std::string marginals = "U,P1,P20,RP,CA,SA,B";
  std::string tsv_path;
  std::string bin_family = "clayton";
  double tau = 0.5;
  int bins = 20;
  int bin_rows = 10000;

  CLI::App* transform = app.add_subcommand(
      "transform", "Write the empirical distributional transform of a dataset");
  transform->add_option("--in", io.in_path, "Input CSV")->required();
  transform->add_option("--grouping", io.grouping_text,
                        "Margin widths, comma separated (e.g. 1,1,3)")
      ->required();
  transform->add_option("--out", io.out_path, "Output CSV")->required();
  transform->add_option("--seed", io.seed, "Seed for the auxiliary uniforms")
      ->capture_default_str();

  CLI::App* test =
      app.add_subcommand("test", "Run an independence test on a dataset");
  test->add_option("--in", io.in_path, "Input CSV")->required();
  test->add_option("--grouping", io.grouping_text,
                   "Margin widths, comma separated (default: one margin per "
                   "column)");
  add_statistic_flags(test, stat_flags);
  test->add_option("--method", method,
                   "permutation, montecarlo-ref, pearson-uniform or gamma")
      ->capture_default_str();
  CLI::Option* b_option =
      test->add_option("--B", resamples,
                       "Permutation resamples (gamma: moment batch, default "
                       "100 there)")
          ->capture_default_str();
  test->add_option("--ref", ref_path,
                   "Reference file (required for montecarlo-ref, optional for "
                   "gamma)");
  test->add_option("--seed", io.seed, "Seed")->capture_default_str();
  test->add_option("--threads", io.threads, "Worker thread cap")
      ->capture_default_str();
  test->add_option("--out", io.out_path, "Also write the report to this file");

  CLI::App* h0 = app.add_subcommand(
      "h0-ref", "Build an approximate Monte-Carlo H0 reference file");
  add_statistic_flags(h0, stat_flags);
  h0->add_option("--n", margins, "Number of margins")->capture_default_str();
  h0->add_option("--grouping", io.grouping_text,
                 "Margin widths (overrides --n; must be univariate)");
  h0->add_option("--N", sample_size, "Sample size the tests will use")
      ->capture_default_str();
  h0->add_option("--reps", count, "Number of H0 samples (at least 1000)")
      ->capture_default_str();
  h0->add_option("--seed", io.seed, "Seed")->capture_default_str();
  h0->add_option("--threads", io.threads, "Worker thread cap")
      ->capture_default_str();
  h0->add_option("--out", io.out_path, "Reference file path")->required();

  CLI::App* power = app.add_subcommand(
      "power", "Rejection-rate table over a copula x marginal grid");
  power->add_option("--copula-family", families,
                    "Copula families, comma separated (independence, clayton, "
                    "gumbel, frank, normal, student<df>)")
      ->capture_default_str();
  power->add_option("--tau", taus, "Kendall tau grid, comma separated")
      ->capture_default_str();
  power->add_option("--marginal", marginals,
                    "Marginal laws, comma separated (U, P1, P20, RP, CA, SA, B)")
      ->capture_default_str();
  add_statistic_flags(power, power_flags, /*list_allowed=*/true);
  power->add_option("--method", power_method,
                    "P-value method used for every cell")
      ->capture_default_str();
  power->add_option("--n", margins, "Number of margins")->capture_default_str();
  power->add_option("--N", sample_size, "Sample size")->capture_default_str();
  power->add_option("--reps", repetitions, "Repetitions per cell")
      ->capture_default_str();
  power->add_option("--alpha", alpha, "Rejection level")->capture_default_str();
  power->add_option("--B", resamples, "Permutation resamples per test")
      ->capture_default_str();
  power->add_option("--ref-count", reference_count,
                    "Approximate reference size for montecarlo-ref and gamma")
      ->capture_default_str();
  power->add_option("--seed", io.seed, "Seed")->capture_default_str();
  power->add_option("--threads", io.threads, "Worker thread cap")
      ->capture_default_str();
  power->add_option("--out", io.out_path, "Write the aligned table here");
  power->add_option("--tsv", tsv_path, "Write a tab-separated table here");

  CLI::App* bench = app.add_subcommand(
      "bench", "Median wall time per p-value for every method");
  add_statistic_flags(bench, stat_flags);
  bench->add_option("--n", margins, "Number of margins")->capture_default_str();
  bench->add_option("--N", sample_size, "Sample size")->capture_default_str();
  bench->add_option("--runs", runs, "Datasets to time (median over these)")
      ->capture_default_str();
  bench->add_option("--B", resamples, "Permutation resamples")
      ->capture_default_str();
  bench->add_option("--ref-count", reference_count, "Reference file size")
      ->capture_default_str();
  bench->add_option("--ref", bench_ref,
                    "Reference file path (built here when missing)")
      ->capture_default_str();
  bench->add_option("--seed", io.seed, "Seed")->capture_default_str();
  bench->add_option("--threads", io.threads, "Worker thread cap")
      ->capture_default_str();
  bench->add_option("--out", io.out_path, "Also write the report to this file");

  CLI::App* bins_cmd = app.add_subcommand(
      "copula-bins", "Bivariate histogram counts of a copula sample");
  bins_cmd->add_option("--copula-family", bin_family, "Copula family")
      ->capture_default_str();
  bins_cmd->add_option("--tau", tau, "Kendall tau")->capture_default_str();
  bins_cmd->add_option("--N", bin_rows, "Sample size")->capture_default_str();
  bins_cmd->add_option("--bins", bins, "Cells per axis")->capture_default_str();
  bins_cmd->add_option("--seed", io.seed, "Seed")->capture_default_str();
  bins_cmd->add_option("--out", io.out_path, "Write the counts here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (transform->parsed()) return cmd_transform(io);
    if (test->parsed())
      return cmd_test(io, stat_flags, method, resamples,
                      b_option->count() > 0, ref_path);
    if (h0->parsed())
      return cmd_h0_ref(io, stat_flags, margins, sample_size, count);
    if (power->parsed())
      return cmd_power(io, power_flags, families, taus, marginals, power_method,
                       margins, sample_size, repetitions, alpha, resamples,
                       reference_count, tsv_path);
    if (bench->parsed())
      return cmd_bench(io, stat_flags, margins, sample_size, runs, resamples,
                       reference_count, bench_ref);
    if (bins_cmd->parsed())
      return cmd_copula_bins(io, bin_family, tau, bin_rows, bins);
    std::cerr << "no subcommand\n";
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 3;
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
}
