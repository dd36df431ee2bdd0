#include "multidep/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "multidep/errors.hpp"

namespace multidep {

namespace {

// Neumaier compensated accumulator; keeps mean computations accurate enough
// for the zero-row-sum invariant of centered matrices.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      carry += (sum - t) + v;
    } else {
      carry += (v - t) + sum;
    }
    sum = t;
  }

  double value() const { return sum + carry; }
};

}  // namespace

std::string KernelSpec::id() const {
  if (kind == KernelKind::euclidean) {
    return "euclidean";
  }
  char buf[48];
  std::snprintf(buf, sizeof buf, "gaussian(%g)", bandwidth);
  return buf;
}

double KernelSpec::of_squared_norm(double squared_norm) const {
  if (kind == KernelKind::euclidean) {
    return std::sqrt(squared_norm);
  }
  return 1.0 - std::exp(-squared_norm / (2.0 * bandwidth * bandwidth));
}

KernelSpec parse_kernel(const std::string& token, double bandwidth) {
  if (token == "euclidean") {
    return KernelSpec::euclidean();
  }
  if (token == "gaussian") {
    if (!(bandwidth > 0.0)) {
      throw ConfigError("gaussian bandwidth must be positive");
    }
    return KernelSpec::gaussian(bandwidth);
  }
  throw ConfigError("unknown kernel '" + token + "' (use euclidean or gaussian)");
}

Eigen::MatrixXd psi_distance_matrix(Eigen::Ref<const Eigen::MatrixXd> margin,
                                    const KernelSpec& kernel) {
  if (kernel.kind == KernelKind::gaussian && !(kernel.bandwidth > 0.0)) {
    throw ConfigError("gaussian bandwidth must be positive");
  }
  const int n = static_cast<int>(margin.rows());
  const int d = static_cast<int>(margin.cols());
  Eigen::MatrixXd a(n, n);
  for (int k = 0; k < n; ++k) {
    a(k, k) = 0.0;
    for (int j = k + 1; j < n; ++j) {
      double sq = 0.0;
      for (int c = 0; c < d; ++c) {
        const double diff = margin(j, c) - margin(k, c);
        sq += diff * diff;
      }
      const double v = kernel.of_squared_norm(sq);
      a(j, k) = v;
      a(k, j) = v;
    }
  }
  return a;
}

CenteredMatrix center_kernel_matrix(const Eigen::MatrixXd& a) {
  const int n = static_cast<int>(a.rows());
  if (a.cols() != n) {
    throw ConfigError("kernel matrix must be square");
  }
  const double dn = static_cast<double>(n);

  // A is symmetric, so column means equal row means.
  std::vector<double> mean(static_cast<std::size_t>(n));
  CompensatedSum grand;
  for (int k = 0; k < n; ++k) {
    CompensatedSum col;
    for (int j = 0; j < n; ++j) {
      col.add(a(j, k));
    }
    const double m = col.value() / dn;
    mean[static_cast<std::size_t>(k)] = m;
    grand.add(m);
  }
  const double grand_mean = grand.value() / dn;

  CenteredMatrix out;
  out.source_grand_mean = grand_mean;
  out.values.resize(n, n);
  for (int k = 0; k < n; ++k) {
    const double mk = mean[static_cast<std::size_t>(k)];
    for (int j = 0; j < n; ++j) {
      out.values(j, k) = -a(j, k) - grand_mean + mk + mean[static_cast<std::size_t>(j)];
    }
  }
  return out;
}

double median_heuristic_bandwidth(Eigen::Ref<const Eigen::MatrixXd> margin) {
  const int n = static_cast<int>(margin.rows());
  const int d = static_cast<int>(margin.cols());
  std::vector<double> dist;
  dist.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      double sq = 0.0;
      for (int c = 0; c < d; ++c) {
        const double diff = margin(j, c) - margin(k, c);
        sq += diff * diff;
      }
      if (sq > 0.0) {
        dist.push_back(std::sqrt(sq));
      }
    }
  }
  if (dist.empty()) {
    throw DataError("median bandwidth needs at least two distinct observations");
  }
  const std::size_t mid = dist.size() / 2;
  std::nth_element(dist.begin(), dist.begin() + static_cast<long>(mid), dist.end());
  return dist[mid];
}

}  // namespace multidep
