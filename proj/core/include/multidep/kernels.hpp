#pragma once

#include <Eigen/Dense>
#include <string>

namespace multidep {

enum class KernelKind { euclidean, gaussian };

// Continuous negative definite function psi applied to margin differences.
//   euclidean: psi(x) = |x|           (Euclidean norm over the margin's columns)
//   gaussian:  psi(x) = 1 - exp(-|x|^2 / (2 delta^2)), bounded in [0, 1)
// The bounded kind doubles as a positive definite kernel via 1 - psi.
struct KernelSpec {
  KernelKind kind = KernelKind::euclidean;
  double bandwidth = 3.0;  // gaussian only

  static KernelSpec euclidean() { return KernelSpec{KernelKind::euclidean, 0.0}; }
  static KernelSpec gaussian(double bandwidth = 3.0) {
    return KernelSpec{KernelKind::gaussian, bandwidth};
  }

  bool bounded() const { return kind == KernelKind::gaussian; }
  // Token used in statistic and reference-file ids, e.g. "euclidean",
  // "gaussian(3)".
  std::string id() const;
  double of_squared_norm(double squared_norm) const;
};

KernelSpec parse_kernel(const std::string& token, double bandwidth);

// A(j,k) = psi(x_j - x_k) over the rows of one margin; symmetric, zero diagonal.
Eigen::MatrixXd psi_distance_matrix(Eigen::Ref<const Eigen::MatrixXd> margin,
                                    const KernelSpec& kernel);

// Doubly centered kernel matrix plus the grand mean of its source, which is
// the normalization constant of the normalized statistics.
struct CenteredMatrix {
  Eigen::MatrixXd values;
  double source_grand_mean = 0.0;
};

// Psi(j,k) = -A(j,k) - grand_mean(A) + col_mean_k(A) + row_mean_j(A).
// A must be symmetric. Means use compensated summation so row sums of the
// result stay below 1e-9 * N * max|A| even at N ~ 1e3.
CenteredMatrix center_kernel_matrix(const Eigen::MatrixXd& a);

// Median of the nonzero pairwise Euclidean distances of a margin; a common
// bandwidth heuristic. Unreliable for uniform margins; provided for
// experimentation only.
double median_heuristic_bandwidth(Eigen::Ref<const Eigen::MatrixXd> margin);

}  // namespace multidep
