#include "multidep/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <optional>
#include <sstream>
#include <utility>

#include "multidep/errors.hpp"
#include "multidep/parallel.hpp"

namespace multidep {

namespace {

std::string format_number(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
  return buf;
}

void validate_method(const std::string& method) {
  if (method != "permutation" && method != "montecarlo-ref" &&
      method != "pearson-uniform" && method != "gamma") {
    throw ConfigError("unknown p-value method '" + method +
                      "' (expected permutation, montecarlo-ref, "
                      "pearson-uniform, or gamma)");
  }
}

}  // namespace

Dataset bernstein_coins(int rows, double perturb_sd, RandomStream& stream) {
  if (rows < 1) {
    throw ConfigError("bernstein coins need at least one row");
  }
  if (perturb_sd < 0.0) {
    throw ConfigError("perturbation standard deviation must be nonnegative");
  }
  Eigen::MatrixXd values(rows, 3);
  for (int r = 0; r < rows; ++r) {
    const double x1 = stream.uniform() >= 0.5 ? 1.0 : 0.0;
    const double x2 = stream.uniform() >= 0.5 ? 1.0 : 0.0;
    const double x3 = x1 == x2 ? 1.0 : 0.0;
    values(r, 0) = x1;
    values(r, 1) = x2;
    values(r, 2) = x3;
    if (perturb_sd > 0.0) {
      for (int c = 0; c < 3; ++c) {
        values(r, c) += perturb_sd * stream.normal();
      }
    }
  }
  return Dataset(std::move(values), Grouping::univariate(3));
}

ReferenceDistribution exact_h0_reference(const StatisticSpec& spec,
                                         MarginalKind marginal, int margins,
                                         int sample_size, int count,
                                         const RandomStream& stream, int threads) {
  if (count < 1000) {
    throw ConfigError("exact H0 reference needs count >= 1000, got " +
                      std::to_string(count));
  }
  if (sample_size < 1) {
    throw ConfigError("exact H0 reference needs N >= 1");
  }
  if (margins < 2) {
    throw ConfigError("exact H0 reference needs at least two margins");
  }
  const Grouping grouping = Grouping::univariate(margins);
  std::vector<double> samples(static_cast<std::size_t>(count));
  parallel_for(count, threads, [&](int r) {
    RandomStream rep = stream.substream(static_cast<std::uint64_t>(r));
    RandomStream data_stream = rep.substream(0);
    RandomStream draw_stream = rep.substream(1);
    Eigen::MatrixXd values(sample_size, margins);
    for (int row = 0; row < sample_size; ++row) {
      for (int col = 0; col < margins; ++col) {
        values(row, col) = marginal_quantile(marginal, data_stream.uniform());
      }
    }
    const Dataset ds(std::move(values), grouping);
    const UniformDraws draws = draw_uniforms(sample_size, margins, draw_stream);
    samples[static_cast<std::size_t>(r)] = evaluate_statistic(ds, draws, spec).scaled;
  });
  return ReferenceDistribution(spec.id(), margins, sample_size, stream.seed(),
                               std::move(samples));
}

PowerTable power_study(const PowerConfig& config, const RandomStream& stream) {
  validate_method(config.method);
  if (config.copulas.empty() || config.marginals.empty() ||
      config.statistics.empty()) {
    throw ConfigError("power study needs at least one copula, marginal, and "
                      "statistic");
  }
  if (config.repetitions < 1) {
    throw ConfigError("power study needs at least one repetition");
  }
  if (!(config.alpha > 0.0 && config.alpha < 1.0)) {
    throw ConfigError("significance level must lie in (0, 1)");
  }
  if (config.margins < 2) {
    throw ConfigError("power study needs at least two margins");
  }
  if (config.sample_size < 1) {
    throw ConfigError("power study needs N >= 1");
  }

  const Grouping grouping = Grouping::univariate(config.margins);
  const RandomStream cells_root = stream.substream(0);
  const RandomStream refs_root = stream.substream(1);

  const bool needs_reference =
      config.method == "montecarlo-ref" || config.method == "gamma";
  std::vector<std::optional<ReferenceDistribution>> references(
      config.statistics.size());
  if (needs_reference) {
    for (std::size_t c = 0; c < config.statistics.size(); ++c) {
      references[c] = build_h0_reference(
          config.statistics[c], grouping, config.sample_size,
          config.reference_count, refs_root.substream(c), config.threads);
    }
  }

  PowerTable table;
  table.method = config.method;
  table.margins = config.margins;
  table.sample_size = config.sample_size;
  table.repetitions = config.repetitions;
  table.alpha = config.alpha;
  table.seed = stream.seed();
  for (const auto& spec : config.statistics) {
    table.columns.push_back(spec.id());
  }

  std::uint64_t row_index = 0;
  for (const auto& copula : config.copulas) {
    for (const auto marginal : config.marginals) {
      CopulaSpec cell_copula = copula;
      cell_copula.dimension = config.margins;

      PowerRow row;
      row.copula = copula.label();
      row.tau = copula.tau;
      row.marginal = marginal_token(marginal);
      const RandomStream row_stream = cells_root.substream(row_index);

      for (std::size_t c = 0; c < config.statistics.size(); ++c) {
        const StatisticSpec& spec = config.statistics[c];
        const RandomStream cell_stream = row_stream.substream(c);
        std::atomic<long> rejections{0};
        parallel_for(config.repetitions, config.threads, [&](int rep) {
          RandomStream rep_stream = cell_stream.substream(static_cast<std::uint64_t>(rep));
          RandomStream data_stream = rep_stream.substream(0);
          RandomStream draw_stream = rep_stream.substream(1);
          const RandomStream method_stream = rep_stream.substream(2);

          Eigen::MatrixXd values =
              sample_copula(cell_copula, config.sample_size, data_stream);
          for (int r = 0; r < config.sample_size; ++r) {
            for (int col = 0; col < config.margins; ++col) {
              values(r, col) = marginal_quantile(marginal, values(r, col));
            }
          }
          const Dataset ds(std::move(values), grouping);
          const UniformDraws draws =
              draw_uniforms(config.sample_size, config.margins, draw_stream);

          double pvalue = 1.0;
          if (config.method == "permutation") {
            pvalue = permutation_pvalue(ds, draws, spec, config.permutation_count,
                                        method_stream)
                         .pvalue;
          } else if (config.method == "montecarlo-ref") {
            pvalue = reference_pvalue(ds, draws, spec, *references[c],
                                      stream.seed())
                         .pvalue;
          } else if (config.method == "pearson-uniform") {
            pvalue = pearson_uniform_report(ds, draws, spec, stream.seed()).pvalue;
          } else {
            pvalue = gamma_report(ds, draws, spec, &*references[c], 100,
                                  method_stream)
                         .pvalue;
          }
          if (pvalue <= config.alpha) {
            rejections.fetch_add(1, std::memory_order_relaxed);
          }
        });
        row.power_percent.push_back(
            100.0 * static_cast<double>(rejections.load()) /
            static_cast<double>(config.repetitions));
      }
      table.rows.push_back(std::move(row));
      ++row_index;
    }
  }
  return table;
}

std::string power_table_text(const PowerTable& table) {
  std::ostringstream out;
  out << "# power study: method=" << table.method << " n=" << table.margins
      << " N=" << table.sample_size << " reps=" << table.repetitions
      << " alpha=" << format_number(table.alpha, 3) << " seed=" << table.seed
      << " (power in %)\n";

  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> header = {"copula", "tau", "marginal"};
  header.insert(header.end(), table.columns.begin(), table.columns.end());
  cells.push_back(header);
  for (const auto& row : table.rows) {
    std::vector<std::string> line = {row.copula, format_number(row.tau, 2),
                                     row.marginal};
    for (double p : row.power_percent) {
      line.push_back(format_number(p, 1));
    }
    cells.push_back(std::move(line));
  }

  std::vector<std::size_t> widths(cells.front().size(), 0);
  for (const auto& line : cells) {
    for (std::size_t i = 0; i < line.size(); ++i) {
      widths[i] = std::max(widths[i], line[i].size());
    }
  }
  for (const auto& line : cells) {
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (i > 0) {
        out << "  ";
      }
      out << line[i];
      for (std::size_t pad = line[i].size(); pad < widths[i]; ++pad) {
        out << ' ';
      }
    }
    out << '\n';
  }
  return out.str();
}

std::string power_table_tsv(const PowerTable& table) {
  std::ostringstream out;
  out << "copula\ttau\tmarginal";
  for (const auto& column : table.columns) {
    out << '\t' << column;
  }
  out << '\n';
  for (const auto& row : table.rows) {
    out << row.copula << '\t' << format_number(row.tau, 4) << '\t' << row.marginal;
    for (double p : row.power_percent) {
      out << '\t' << format_number(p, 4);
    }
    out << '\n';
  }
  return out.str();
}

Eigen::MatrixXi copula_bin_counts(const CopulaSpec& spec, int rows, int bins,
                                  RandomStream& stream) {
  if (bins < 1) {
    throw ConfigError("bin grid needs at least one bin");
  }
  CopulaSpec pair_spec = spec;
  pair_spec.dimension = std::max(spec.dimension, 2);
  const Eigen::MatrixXd sample = sample_copula(pair_spec, rows, stream);
  Eigen::MatrixXi counts = Eigen::MatrixXi::Zero(bins, bins);
  for (int r = 0; r < rows; ++r) {
    const int i = std::min(static_cast<int>(sample(r, 0) * bins), bins - 1);
    const int j = std::min(static_cast<int>(sample(r, 1) * bins), bins - 1);
    counts(i, j) += 1;
  }
  return counts;
}

}  // namespace multidep
