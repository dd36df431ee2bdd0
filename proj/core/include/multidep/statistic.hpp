#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "multidep/dataset.hpp"
#include "multidep/kernels.hpp"

namespace multidep {

// Independence statistics on n margins. The multivariance family multiplies
// doubly centered psi-distance matrices entrywise; dhsic combines
// bounded-kernel Gram matrices. The normalized kinds divide each centered
// matrix by the grand mean of its uncentered source, which cancels any
// rescaling of a margin.
enum class StatisticKind {
  multivariance,     // squared sample multivariance over all n margins
  total,             // sum of squared multivariances over all subsets, |I| >= 2
  m_multivariance,   // restricted to subsets of one fixed size m
  normalized,        // multivariance on normalized matrices
  normalized_total,  // total on normalized matrices
  dhsic,             // multivariate Hilbert-Schmidt independence criterion
};

// Tokens: multivariance, total (alias total-multivariance), m2, m3, ...
// (digits give the subset size), normalized (alias normalized-multivariance),
// normalized-total, dhsic. The int is the subset size; it only carries
// meaning for m_multivariance.
std::pair<StatisticKind, int> parse_statistic(const std::string& token);
std::string statistic_token(StatisticKind kind, int m = 2);

struct StatisticSpec {
  StatisticKind kind = StatisticKind::normalized_total;
  int m = 2;  // subset size when kind == m_multivariance
  KernelSpec kernel = KernelSpec::euclidean();
  // Apply the empirical distributional transform first (the margin-free
  // copula version of the statistic). Not part of id(): under independence
  // the scaled statistic shares its reference distribution with the plain
  // statistic on uniform margins, which is what makes cached approximate
  // Monte-Carlo references reusable.
  bool copula = true;

  bool multivariance_family() const { return kind != StatisticKind::dhsic; }
  bool normalized_kind() const {
    return kind == StatisticKind::normalized ||
           kind == StatisticKind::normalized_total;
  }
  // Keys reference files and reports, e.g. "normalized-total:euclidean".
  std::string id() const;
};

struct StatisticResult {
  double value = 0.0;   // squared statistic, clamped into [0, inf)
  double scaled = 0.0;  // N * value, the test statistic
  // Margins whose normalization constant was zero (constant margin). The
  // whole normalized statistic is defined as 0 when any margin degenerates.
  std::vector<int> degenerate_margins;
  // dhsic evaluated with N < 2n; still computed, flagged for the report.
  bool small_sample = false;
};

// Caches the per-margin matrices so that row-permuted re-evaluation (the
// resampling test) costs O(n N^2) with no kernel or transform work.
class PreparedStatistic {
 public:
  // values must already be transformed when the spec's copula flag is set;
  // see prepare_statistic.
  PreparedStatistic(const Eigen::MatrixXd& values, const Grouping& grouping,
                    const StatisticSpec& spec);

  const StatisticSpec& spec() const { return spec_; }
  const StatisticResult& observed() const { return observed_; }
  int sample_size() const { return rows_; }
  int margin_count() const { return margins_; }

  // Scaled statistic with margin i's rows renumbered by perms[i]. Each entry
  // must be a permutation of 0..N-1; perms[0] stays the identity in the
  // resampling test since permuting every margin the same way is a no-op.
  double permuted_scaled(const std::vector<std::vector<int>>& perms) const;

 private:
  double raw_value(const std::vector<std::vector<int>>& perms) const;
  double clamped(double value) const;

  StatisticSpec spec_;
  int rows_ = 0;
  int margins_ = 0;
  std::vector<Eigen::MatrixXd> mats_;       // centered Psi, or Gram for dhsic
  std::vector<Eigen::VectorXd> row_means_;  // dhsic term 3
  double grand_mean_product_ = 1.0;         // dhsic term 2, permutation invariant
  std::vector<int> degenerate_;
  StatisticResult observed_;
};

// Transforms when the spec asks for it, then caches matrices for evaluation.
PreparedStatistic prepare_statistic(const Dataset& data, const UniformDraws& draws,
                                    const StatisticSpec& spec);

StatisticResult evaluate_statistic(const Dataset& data, const UniformDraws& draws,
                                   const StatisticSpec& spec);

}  // namespace multidep
