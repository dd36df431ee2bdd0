#include "multidep/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>

#include "multidep/errors.hpp"

namespace multidep {

namespace {

// Number of inverted pairs (i < j with values[i] > values[j]), counted while
// merge sorting in place.
std::int64_t merge_count_inversions(std::vector<double>& values) {
  const std::size_t n = values.size();
  std::vector<double> buffer(n);
  std::int64_t inversions = 0;
  for (std::size_t width = 1; width < n; width *= 2) {
    for (std::size_t left = 0; left + width < n; left += 2 * width) {
      const std::size_t mid = left + width;
      const std::size_t right = std::min(left + 2 * width, n);
      std::size_t a = left;
      std::size_t b = mid;
      std::size_t out = left;
      while (a < mid && b < right) {
        if (values[b] < values[a]) {
          inversions += static_cast<std::int64_t>(mid - a);
          buffer[out++] = values[b++];
        } else {
          buffer[out++] = values[a++];
        }
      }
      while (a < mid) {
        buffer[out++] = values[a++];
      }
      while (b < right) {
        buffer[out++] = values[b++];
      }
      std::copy(buffer.begin() + static_cast<std::ptrdiff_t>(left),
                buffer.begin() + static_cast<std::ptrdiff_t>(right),
                values.begin() + static_cast<std::ptrdiff_t>(left));
    }
  }
  return inversions;
}

std::int64_t tied_pairs(std::int64_t run_length) {
  return run_length * (run_length - 1) / 2;
}

}  // namespace

double kendall_tau(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw ConfigError("kendall tau needs sequences of equal length");
  }
  const std::size_t n = x.size();
  if (n < 2) {
    throw ConfigError("kendall tau needs at least two observations");
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (x[static_cast<std::size_t>(a)] != x[static_cast<std::size_t>(b)]) {
      return x[static_cast<std::size_t>(a)] < x[static_cast<std::size_t>(b)];
    }
    return y[static_cast<std::size_t>(a)] < y[static_cast<std::size_t>(b)];
  });

  // Tie counts: pairs tied in x (n1), tied in both (n3).
  std::int64_t n1 = 0;
  std::int64_t n3 = 0;
  std::int64_t x_run = 1;
  std::int64_t xy_run = 1;
  std::vector<double> y_in_x_order(n);
  y_in_x_order[0] = y[static_cast<std::size_t>(order[0])];
  for (std::size_t i = 1; i < n; ++i) {
    const auto prev = static_cast<std::size_t>(order[i - 1]);
    const auto cur = static_cast<std::size_t>(order[i]);
    y_in_x_order[i] = y[cur];
    if (x[cur] == x[prev]) {
      ++x_run;
      if (y[cur] == y[prev]) {
        ++xy_run;
      } else {
        n3 += tied_pairs(xy_run);
        xy_run = 1;
      }
    } else {
      n1 += tied_pairs(x_run);
      n3 += tied_pairs(xy_run);
      x_run = 1;
      xy_run = 1;
    }
  }
  n1 += tied_pairs(x_run);
  n3 += tied_pairs(xy_run);

  const std::int64_t swaps = merge_count_inversions(y_in_x_order);

  // y_in_x_order is sorted now; count pairs tied in y (n2).
  std::int64_t n2 = 0;
  std::int64_t y_run = 1;
  for (std::size_t i = 1; i < n; ++i) {
    if (y_in_x_order[i] == y_in_x_order[i - 1]) {
      ++y_run;
    } else {
      n2 += tied_pairs(y_run);
      y_run = 1;
    }
  }
  n2 += tied_pairs(y_run);

  const auto count = static_cast<std::int64_t>(n);
  const std::int64_t n0 = count * (count - 1) / 2;
  if (n0 == n1 || n0 == n2) {
    throw DataError("kendall tau is undefined for a constant sequence");
  }
  const std::int64_t concordant_minus_discordant = n0 - n1 - n2 + n3 - 2 * swaps;
  return static_cast<double>(concordant_minus_discordant) /
         (std::sqrt(static_cast<double>(n0 - n1)) *
          std::sqrt(static_cast<double>(n0 - n2)));
}

double ks_uniform_statistic(std::vector<double> values) {
  if (values.empty()) {
    throw ConfigError("KS statistic needs at least one value");
  }
  for (double v : values) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw DataError("KS uniformity check needs values in [0, 1], got " +
                      std::to_string(v));
    }
  }
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  double sup = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double hi = static_cast<double>(i + 1) / n - values[i];
    const double lo = values[i] - static_cast<double>(i) / n;
    sup = std::max(sup, std::max(hi, lo));
  }
  return sup;
}

double ks_uniform_critical(int count, double alpha) {
  if (count < 1) {
    throw ConfigError("KS critical value needs count >= 1");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw ConfigError("KS critical value needs alpha in (0, 1)");
  }
  return std::sqrt(-std::log(alpha / 2.0) / 2.0) / std::sqrt(static_cast<double>(count));
}

}  // namespace multidep
