#pragma once

#include <functional>
#include <span>

#include "multidep/dataset.hpp"

namespace multidep {

// Law of a univariate random variable, given through the two ingredients the
// distributional transform needs: the left-limit cdf P(X < x) and the point
// mass P(X = x). Works for pure and mixed discrete/continuous laws.
struct UnivariateLaw {
  std::function<double(double)> prob_below;
  std::function<double(double)> point_mass;
};

// T(x, u) = P(X < x) + u * P(X = x). With u uniform and independent of X the
// result is Uniform(0, 1) distributed, whatever the law of X.
double population_transform(double x, double u, const UnivariateLaw& law);

// Empirical analogue against a reference sample:
//   (1/N) * sum_k [ 1{ref_k < x} + u * 1{ref_k = x} ]
// Ties are exact floating-point equality. When transforming a dataset the
// reference sample contains the transformed observation itself.
double empirical_transform_value(double x, double u, std::span<const double> reference);

// Column-wise empirical transform of every margin of a dataset, consuming one
// auxiliary uniform per cell. Sorts each column once and uses rank counts;
// equals the per-value formula bit-exactly.
TransformedDataset empirical_transform(const Dataset& data, const UniformDraws& draws);

}  // namespace multidep
