#include "multidep/multivariance.hpp"

#include <vector>

#include "multidep/errors.hpp"

namespace multidep {

namespace {

int common_size(std::span<const Eigen::MatrixXd> centered) {
  if (centered.empty()) {
    throw ConfigError("need at least one centered matrix");
  }
  const int n = static_cast<int>(centered.front().rows());
  for (const auto& m : centered) {
    if (m.rows() != n || m.cols() != n) {
      throw ConfigError("centered matrices must share the same N x N shape");
    }
  }
  return n;
}

}  // namespace

double sample_multivariance_sq(std::span<const Eigen::MatrixXd> centered) {
  const int n = common_size(centered);
  const std::size_t margins = centered.size();
  double acc = 0.0;
  for (int k = 0; k < n; ++k) {
    double col = 0.0;
    for (int j = 0; j < n; ++j) {
      double prod = centered[0](j, k);
      for (std::size_t i = 1; i < margins; ++i) {
        prod *= centered[i](j, k);
      }
      col += prod;
    }
    acc += col;
  }
  const double dn = static_cast<double>(n);
  return acc / (dn * dn);
}

double total_multivariance_sq(std::span<const Eigen::MatrixXd> centered) {
  const int n = common_size(centered);
  if (centered.size() < 2) {
    throw ConfigError("total multivariance needs at least two margins");
  }
  const std::size_t margins = centered.size();
  double acc = 0.0;
  for (int k = 0; k < n; ++k) {
    double col = 0.0;
    for (int j = 0; j < n; ++j) {
      double prod = 1.0;
      double sum = 0.0;
      for (std::size_t i = 0; i < margins; ++i) {
        const double v = centered[i](j, k);
        prod *= 1.0 + v;
        sum += v;
      }
      col += prod - 1.0 - sum;
    }
    acc += col;
  }
  const double dn = static_cast<double>(n);
  return acc / (dn * dn);
}

double m_multivariance_sq(std::span<const Eigen::MatrixXd> centered, int m) {
  const int n = common_size(centered);
  const int margins = static_cast<int>(centered.size());
  if (m < 2 || m > margins) {
    throw ConfigError("subset size m must satisfy 2 <= m <= margin count");
  }

  double acc = 0.0;
  if (m == 2) {
    for (int k = 0; k < n; ++k) {
      double col = 0.0;
      for (int j = 0; j < n; ++j) {
        double sum = 0.0;
        double sum_sq = 0.0;
        for (int i = 0; i < margins; ++i) {
          const double v = centered[static_cast<std::size_t>(i)](j, k);
          sum += v;
          sum_sq += v * v;
        }
        col += (sum * sum - sum_sq) * 0.5;
      }
      acc += col;
    }
  } else {
    // Elementary symmetric polynomial e_m of the per-entry margin values.
    std::vector<double> e(static_cast<std::size_t>(m) + 1);
    for (int k = 0; k < n; ++k) {
      double col = 0.0;
      for (int j = 0; j < n; ++j) {
        e.assign(e.size(), 0.0);
        e[0] = 1.0;
        for (int i = 0; i < margins; ++i) {
          const double v = centered[static_cast<std::size_t>(i)](j, k);
          const int top = i + 1 < m ? i + 1 : m;
          for (int t = top; t >= 1; --t) {
            e[static_cast<std::size_t>(t)] += v * e[static_cast<std::size_t>(t) - 1];
          }
        }
        col += e[static_cast<std::size_t>(m)];
      }
      acc += col;
    }
  }
  const double dn = static_cast<double>(n);
  return acc / (dn * dn);
}

bool normalize_centered(CenteredMatrix& matrix) {
  // psi matrices are entrywise nonnegative, so the grand mean is zero exactly
  // when the margin is constant.
  if (!(matrix.source_grand_mean > 0.0)) {
    matrix.values.setZero();
    return false;
  }
  matrix.values /= matrix.source_grand_mean;
  return true;
}

}  // namespace multidep
