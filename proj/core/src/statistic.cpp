#include "multidep/statistic.hpp"

#include <charconv>
#include <cstddef>
#include <string>
#include <vector>

#include "multidep/dhsic.hpp"
#include "multidep/errors.hpp"
#include "multidep/multivariance.hpp"
#include "multidep/transform.hpp"

namespace multidep {

namespace {

constexpr double kNegativeTolerance = -1e-9;

}  // namespace

std::pair<StatisticKind, int> parse_statistic(const std::string& token) {
  if (token == "multivariance") {
    return {StatisticKind::multivariance, 2};
  }
  if (token == "total" || token == "total-multivariance") {
    return {StatisticKind::total, 2};
  }
  if (token == "normalized" || token == "normalized-multivariance") {
    return {StatisticKind::normalized, 2};
  }
  if (token == "normalized-total" || token == "normalized-total-multivariance") {
    return {StatisticKind::normalized_total, 2};
  }
  if (token == "dhsic") {
    return {StatisticKind::dhsic, 2};
  }
  if (token.size() >= 2 && token.front() == 'm') {
    int m = 0;
    const char* first = token.data() + 1;
    const char* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, m);
    if (ec == std::errc() && ptr == last && m >= 2) {
      return {StatisticKind::m_multivariance, m};
    }
  }
  throw ConfigError("unknown statistic '" + token +
                    "' (expected multivariance, total, m2, m3, ..., "
                    "normalized, normalized-total, or dhsic)");
}

std::string statistic_token(StatisticKind kind, int m) {
  switch (kind) {
    case StatisticKind::multivariance:
      return "multivariance";
    case StatisticKind::total:
      return "total";
    case StatisticKind::m_multivariance:
      return "m" + std::to_string(m);
    case StatisticKind::normalized:
      return "normalized";
    case StatisticKind::normalized_total:
      return "normalized-total";
    case StatisticKind::dhsic:
      return "dhsic";
  }
  throw InternalError("unhandled statistic kind");
}

std::string StatisticSpec::id() const {
  return statistic_token(kind, m) + ":" + kernel.id();
}

PreparedStatistic::PreparedStatistic(const Eigen::MatrixXd& values,
                                     const Grouping& grouping,
                                     const StatisticSpec& spec)
    : spec_(spec),
      rows_(static_cast<int>(values.rows())),
      margins_(grouping.margins()) {
  if (static_cast<int>(values.cols()) != grouping.total_columns()) {
    throw ConfigError("grouping sum " + std::to_string(grouping.total_columns()) +
                      " \xE2\x89\xA0 " + std::to_string(values.cols()) +
                      " columns");
  }
  if (rows_ < 1) {
    throw DataError("need at least one observation");
  }
  if (margins_ < 2) {
    throw ConfigError("independence statistics need at least two margins");
  }
  if (spec_.kind == StatisticKind::m_multivariance &&
      (spec_.m < 2 || spec_.m > margins_)) {
    throw ConfigError("subset size m must satisfy 2 <= m <= margin count");
  }

  mats_.reserve(static_cast<std::size_t>(margins_));
  if (spec_.multivariance_family()) {
    for (int i = 0; i < margins_; ++i) {
      Eigen::MatrixXd a = psi_distance_matrix(
          values.middleCols(grouping.offset(i), grouping.width(i)), spec_.kernel);
      CenteredMatrix centered = center_kernel_matrix(a);
      if (spec_.normalized_kind() && !normalize_centered(centered)) {
        degenerate_.push_back(i);
      }
      mats_.push_back(std::move(centered.values));
    }
  } else {
    row_means_.reserve(static_cast<std::size_t>(margins_));
    for (int i = 0; i < margins_; ++i) {
      Eigen::MatrixXd gram = gram_matrix(
          values.middleCols(grouping.offset(i), grouping.width(i)), spec_.kernel);
      row_means_.push_back(gram.rowwise().mean());
      grand_mean_product_ *= row_means_.back().mean();
      mats_.push_back(std::move(gram));
    }
  }

  std::vector<std::vector<int>> identity(
      static_cast<std::size_t>(margins_), std::vector<int>(static_cast<std::size_t>(rows_)));
  for (auto& perm : identity) {
    for (int j = 0; j < rows_; ++j) {
      perm[static_cast<std::size_t>(j)] = j;
    }
  }
  observed_.value = clamped(raw_value(identity));
  observed_.scaled = static_cast<double>(rows_) * observed_.value;
  observed_.degenerate_margins = degenerate_;
  observed_.small_sample =
      spec_.kind == StatisticKind::dhsic && rows_ < 2 * margins_;
}

double PreparedStatistic::clamped(double value) const {
  if (value < kNegativeTolerance) {
    throw InternalError("squared statistic " + std::to_string(value) +
                        " is negative beyond tolerance");
  }
  return value < 0.0 ? 0.0 : value;
}

double PreparedStatistic::permuted_scaled(
    const std::vector<std::vector<int>>& perms) const {
  if (static_cast<int>(perms.size()) != margins_) {
    throw ConfigError("need one row permutation per margin");
  }
  for (const auto& perm : perms) {
    if (static_cast<int>(perm.size()) != rows_) {
      throw ConfigError("row permutation length must equal N");
    }
  }
  return static_cast<double>(rows_) * clamped(raw_value(perms));
}

// Mirrors the unpermuted implementations entry for entry (same accumulation
// order), so identity permutations reproduce them bit-exactly.
double PreparedStatistic::raw_value(
    const std::vector<std::vector<int>>& perms) const {
  if (spec_.normalized_kind() && !degenerate_.empty()) {
    return 0.0;
  }
  const std::size_t margins = mats_.size();
  const int n = rows_;
  const double dn = static_cast<double>(n);

  std::vector<const int*> idx(margins);
  for (std::size_t i = 0; i < margins; ++i) {
    idx[i] = perms[i].data();
  }
  // Per-margin base of the current matrix column; matrices are column-major.
  std::vector<const double*> col_base(margins);

  switch (spec_.kind) {
    case StatisticKind::multivariance:
    case StatisticKind::normalized: {
      double acc = 0.0;
      for (int k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < margins; ++i) {
          col_base[i] = mats_[i].data() +
                        static_cast<std::ptrdiff_t>(idx[i][k]) * n;
        }
        double col = 0.0;
        for (int j = 0; j < n; ++j) {
          double prod = col_base[0][idx[0][j]];
          for (std::size_t i = 1; i < margins; ++i) {
            prod *= col_base[i][idx[i][j]];
          }
          col += prod;
        }
        acc += col;
      }
      return acc / (dn * dn);
    }
    case StatisticKind::total:
    case StatisticKind::normalized_total: {
      double acc = 0.0;
      for (int k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < margins; ++i) {
          col_base[i] = mats_[i].data() +
                        static_cast<std::ptrdiff_t>(idx[i][k]) * n;
        }
        double col = 0.0;
        for (int j = 0; j < n; ++j) {
          double prod = 1.0;
          double sum = 0.0;
          for (std::size_t i = 0; i < margins; ++i) {
            const double v = col_base[i][idx[i][j]];
            prod *= 1.0 + v;
            sum += v;
          }
          col += prod - 1.0 - sum;
        }
        acc += col;
      }
      return acc / (dn * dn);
    }
    case StatisticKind::m_multivariance: {
      const int m = spec_.m;
      double acc = 0.0;
      if (m == 2) {
        for (int k = 0; k < n; ++k) {
          for (std::size_t i = 0; i < margins; ++i) {
            col_base[i] = mats_[i].data() +
                          static_cast<std::ptrdiff_t>(idx[i][k]) * n;
          }
          double col = 0.0;
          for (int j = 0; j < n; ++j) {
            double sum = 0.0;
            double sum_sq = 0.0;
            for (std::size_t i = 0; i < margins; ++i) {
              const double v = col_base[i][idx[i][j]];
              sum += v;
              sum_sq += v * v;
            }
            col += (sum * sum - sum_sq) * 0.5;
          }
          acc += col;
        }
      } else {
        std::vector<double> e(static_cast<std::size_t>(m) + 1);
        for (int k = 0; k < n; ++k) {
          for (std::size_t i = 0; i < margins; ++i) {
            col_base[i] = mats_[i].data() +
                          static_cast<std::ptrdiff_t>(idx[i][k]) * n;
          }
          double col = 0.0;
          for (int j = 0; j < n; ++j) {
            e.assign(e.size(), 0.0);
            e[0] = 1.0;
            for (std::size_t i = 0; i < margins; ++i) {
              const double v = col_base[i][idx[i][j]];
              const int top = static_cast<int>(i) + 1 < m ? static_cast<int>(i) + 1 : m;
              for (int t = top; t >= 1; --t) {
                e[static_cast<std::size_t>(t)] +=
                    v * e[static_cast<std::size_t>(t) - 1];
              }
            }
            col += e[static_cast<std::size_t>(m)];
          }
          acc += col;
        }
      }
      return acc / (dn * dn);
    }
    case StatisticKind::dhsic: {
      double term1 = 0.0;
      for (int k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < margins; ++i) {
          col_base[i] = mats_[i].data() +
                        static_cast<std::ptrdiff_t>(idx[i][k]) * n;
        }
        double col = 0.0;
        for (int j = 0; j < n; ++j) {
          double prod = col_base[0][idx[0][j]];
          for (std::size_t i = 1; i < margins; ++i) {
            prod *= col_base[i][idx[i][j]];
          }
          col += prod;
        }
        term1 += col;
      }
      term1 /= dn * dn;

      double term3 = 0.0;
      for (int j = 0; j < n; ++j) {
        double prod = row_means_[0](idx[0][j]);
        for (std::size_t i = 1; i < margins; ++i) {
          prod *= row_means_[i](idx[i][j]);
        }
        term3 += prod;
      }
      term3 *= 2.0 / dn;

      return term1 + grand_mean_product_ - term3;
    }
  }
  throw InternalError("unhandled statistic kind");
}

PreparedStatistic prepare_statistic(const Dataset& data, const UniformDraws& draws,
                                    const StatisticSpec& spec) {
  if (spec.copula) {
    TransformedDataset transformed = empirical_transform(data, draws);
    return PreparedStatistic(transformed.values, transformed.grouping, spec);
  }
  return PreparedStatistic(data.values(), data.grouping(), spec);
}

StatisticResult evaluate_statistic(const Dataset& data, const UniformDraws& draws,
                                   const StatisticSpec& spec) {
  return prepare_statistic(data, draws, spec).observed();
}

}  // namespace multidep
