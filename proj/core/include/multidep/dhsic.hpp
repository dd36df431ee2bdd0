#pragma once

#include <Eigen/Dense>
#include <span>

#include "multidep/dataset.hpp"
#include "multidep/kernels.hpp"

namespace multidep {

// Gram matrix of the bounded kernel 1 - psi over the rows of one margin;
// symmetric with ones on the diagonal, entries in (0, 1]. Requires a bounded
// kernel kind.
Eigen::MatrixXd gram_matrix(Eigen::Ref<const Eigen::MatrixXd> margin,
                            const KernelSpec& kernel);

// Three-term V-statistic estimator from per-margin Gram matrices K_i:
//   (1/N^2) sum_{j,k} prod_i K_i(j,k)
//   + prod_i [ (1/N^2) sum_{j,k} K_i(j,k) ]
//   - (2/N) sum_j prod_i [ (1/N) sum_k K_i(j,k) ]
// Defined for every N >= 1 (N = 1 gives 0); cost O(n N^2).
double dhsic_from_grams(std::span<const Eigen::MatrixXd> grams);

}  // namespace multidep
