#pragma once

#include <span>
#include <vector>

namespace multidep {

// Tie-corrected Kendall rank correlation (tau-b), which equals plain tau-a on
// tie-free data. O(N log N) via Knight's merge-sort inversion count.
double kendall_tau(std::span<const double> x, std::span<const double> y);

// Kolmogorov-Smirnov sup distance between the empirical cdf of values (all in
// [0, 1]) and the Uniform(0, 1) cdf.
double ks_uniform_statistic(std::vector<double> values);

// Asymptotic critical value sqrt(-ln(alpha/2) / 2) / sqrt(count); the
// one-term tail bound, slightly conservative at finite count.
double ks_uniform_critical(int count, double alpha);

}  // namespace multidep
