#include "multidep/transform.hpp"

#include <algorithm>

#include "multidep/errors.hpp"

namespace multidep {

namespace {

void check_u(double u) {
  if (!(u >= 0.0) || !(u <= 1.0)) {
    throw ConfigError("auxiliary uniform must lie in [0, 1]");
  }
}

}  // namespace

double population_transform(double x, double u, const UnivariateLaw& law) {
  check_u(u);
  if (!law.prob_below || !law.point_mass) {
    throw ConfigError("law must provide prob_below and point_mass");
  }
  return law.prob_below(x) + u * law.point_mass(x);
}

double empirical_transform_value(double x, double u, std::span<const double> reference) {
  check_u(u);
  if (reference.empty()) {
    throw ConfigError("reference sample must be non-empty");
  }
  long below = 0;
  long equal = 0;
  for (double r : reference) {
    if (r < x) {
      ++below;
    } else if (r == x) {
      ++equal;
    }
  }
  return (static_cast<double>(below) + u * static_cast<double>(equal)) /
         static_cast<double>(reference.size());
}

TransformedDataset empirical_transform(const Dataset& data, const UniformDraws& draws) {
  const Eigen::MatrixXd& values = data.values();
  if (draws.values.rows() != values.rows() || draws.values.cols() != values.cols()) {
    throw ConfigError("uniform draw shape does not match dataset shape");
  }
  const int rows = static_cast<int>(values.rows());
  const int cols = static_cast<int>(values.cols());
  const double n = static_cast<double>(rows);

  Eigen::MatrixXd out(rows, cols);
  std::vector<double> sorted(static_cast<std::size_t>(rows));
  for (int c = 0; c < cols; ++c) {
    for (int r = 0; r < rows; ++r) {
      sorted[static_cast<std::size_t>(r)] = values(r, c);
    }
    std::sort(sorted.begin(), sorted.end());
    for (int r = 0; r < rows; ++r) {
      const double x = values(r, c);
      const auto lo = std::lower_bound(sorted.begin(), sorted.end(), x);
      const auto hi = std::upper_bound(lo, sorted.end(), x);
      const double below = static_cast<double>(lo - sorted.begin());
      const double equal = static_cast<double>(hi - lo);
      out(r, c) = (below + draws.values(r, c) * equal) / n;
    }
  }
  return TransformedDataset{std::move(out), data.grouping()};
}

}  // namespace multidep
