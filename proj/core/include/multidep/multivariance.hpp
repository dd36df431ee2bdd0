#pragma once

#include <span>

#include "multidep/kernels.hpp"

namespace multidep {

// Joint-dependence V-statistics over doubly centered kernel matrices. All
// return the squared sample statistic, which is nonnegative up to rounding
// because Hadamard products of centered cndf matrices are positive
// semidefinite.

// (1/N^2) sum_{j,k} prod_i Psi_i(j,k).
double sample_multivariance_sq(std::span<const Eigen::MatrixXd> centered);

// Sum of sample_multivariance_sq over every subset of >= 2 margins, computed
// with the product expansion (1/N^2) sum_{j,k} [prod_i(1 + Psi_i) - 1 - sum_i Psi_i].
double total_multivariance_sq(std::span<const Eigen::MatrixXd> centered);

// Sum over subsets of exactly m margins. m = 2 uses the pair identity
// [(sum_i Psi_i)^2 - sum_i Psi_i^2] / 2 per entry; larger m an elementary
// symmetric polynomial recursion per entry, both O(N^2 n).
double m_multivariance_sq(std::span<const Eigen::MatrixXd> centered, int m);

// Divides the centered matrix by the grand mean of its uncentered source.
// Returns false (and zeroes the matrix) for a degenerate margin, i.e. a
// constant margin whose psi matrix is identically zero.
bool normalize_centered(CenteredMatrix& matrix);

}  // namespace multidep
