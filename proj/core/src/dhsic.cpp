#include "multidep/dhsic.hpp"

#include <cmath>
#include <vector>

#include "multidep/errors.hpp"

namespace multidep {

Eigen::MatrixXd gram_matrix(Eigen::Ref<const Eigen::MatrixXd> margin,
                            const KernelSpec& kernel) {
  if (!kernel.bounded()) {
    throw ConfigError("dhsic needs a bounded kernel; use --kernel gaussian");
  }
  const int n = static_cast<int>(margin.rows());
  const int d = static_cast<int>(margin.cols());
  const double two_bw_sq = 2.0 * kernel.bandwidth * kernel.bandwidth;
  Eigen::MatrixXd k(n, n);
  for (int c2 = 0; c2 < n; ++c2) {
    k(c2, c2) = 1.0;
    for (int j = c2 + 1; j < n; ++j) {
      double sq = 0.0;
      for (int c = 0; c < d; ++c) {
        const double diff = margin(j, c) - margin(c2, c);
        sq += diff * diff;
      }
      const double v = std::exp(-sq / two_bw_sq);
      k(j, c2) = v;
      k(c2, j) = v;
    }
  }
  return k;
}

double dhsic_from_grams(std::span<const Eigen::MatrixXd> grams) {
  if (grams.empty()) {
    throw ConfigError("need at least one Gram matrix");
  }
  const int n = static_cast<int>(grams.front().rows());
  for (const auto& g : grams) {
    if (g.rows() != n || g.cols() != n) {
      throw ConfigError("Gram matrices must share the same N x N shape");
    }
  }
  const std::size_t margins = grams.size();
  const double dn = static_cast<double>(n);

  // Row means feed term 3; their grand means feed term 2.
  std::vector<Eigen::VectorXd> row_means;
  row_means.reserve(margins);
  double term2 = 1.0;
  for (const auto& g : grams) {
    Eigen::VectorXd rm = g.rowwise().mean();
    term2 *= rm.mean();
    row_means.push_back(std::move(rm));
  }

  double term1 = 0.0;
  for (int k = 0; k < n; ++k) {
    double col = 0.0;
    for (int j = 0; j < n; ++j) {
      double prod = grams[0](j, k);
      for (std::size_t i = 1; i < margins; ++i) {
        prod *= grams[i](j, k);
      }
      col += prod;
    }
    term1 += col;
  }
  term1 /= dn * dn;

  double term3 = 0.0;
  for (int j = 0; j < n; ++j) {
    double prod = row_means[0](j);
    for (std::size_t i = 1; i < margins; ++i) {
      prod *= row_means[i](j);
    }
    term3 += prod;
  }
  term3 *= 2.0 / dn;

  return term1 + term2 - term3;
}

}  // namespace multidep
