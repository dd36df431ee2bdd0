#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "multidep/copulas.hpp"
#include "multidep/dataset.hpp"
#include "multidep/marginals.hpp"
#include "multidep/pvalues.hpp"
#include "multidep/random.hpp"
#include "multidep/statistic.hpp"

namespace multidep {

// Three pairwise independent but jointly dependent coins: X1, X2 iid
// Bernoulli(1/2), X3 = 1{X1 = X2}. With perturb_sd > 0, independent centered
// normal noise of that standard deviation is added to all three columns.
// Per row the draws are the two coin uniforms, then (when perturbing) the
// three noise normals.
Dataset bernstein_coins(int rows, double perturb_sd, RandomStream& stream);

// Exact Monte-Carlo H0 reference: the spec's statistic on `count` independent
// datasets of n iid columns of the marginal law, transform included when the
// spec says copula. Carries the same key as an approximate reference from
// build_h0_reference on purpose: both estimate the H0 law of the same scaled
// statistic, one from the actual marginal, one from raw uniforms.
ReferenceDistribution exact_h0_reference(const StatisticSpec& spec,
                                         MarginalKind marginal, int margins,
                                         int sample_size, int count,
                                         const RandomStream& stream,
                                         int threads = 1);

// Grid of a power experiment: rows are copula (with its tau) x marginal,
// columns are statistics, one p-value method throughout.
struct PowerConfig {
  std::vector<CopulaSpec> copulas;  // dimension field is overridden by margins
  std::vector<MarginalKind> marginals;
  std::vector<StatisticSpec> statistics;
  std::string method = "montecarlo-ref";
  int margins = 5;
  int sample_size = 100;
  int repetitions = 1000;
  double alpha = 0.05;
  int permutation_count = 300;   // B for the permutation method
  int reference_count = 100000;  // per-statistic approximate reference size
  int threads = 1;
};

struct PowerRow {
  std::string copula;
  double tau = 0.0;
  std::string marginal;
  std::vector<double> power_percent;  // one per statistic column
};

struct PowerTable {
  std::vector<std::string> columns;  // statistic ids
  std::vector<PowerRow> rows;
  std::string method;
  int margins = 0;
  int sample_size = 0;
  int repetitions = 0;
  double alpha = 0.0;
  std::uint64_t seed = 0;
};

// Rejection percentage (p <= alpha) per cell over `repetitions` independent
// datasets. Cell (row r, column c) derives every repetition's streams from
// stream.substream(0).substream(r).substream(c).substream(rep); the
// montecarlo-ref and gamma methods share per-column approximate references
// seeded from stream.substream(1).substream(c). The result is identical for
// any thread count.
PowerTable power_study(const PowerConfig& config, const RandomStream& stream);

// Aligned human-readable table and tab-separated variant.
std::string power_table_text(const PowerTable& table);
std::string power_table_tsv(const PowerTable& table);

// bins x bins counts of the first two columns of a copula sample; entry
// (i, j) counts rows with u1 in cell i and u2 in cell j (cell k covers
// [k/bins, (k+1)/bins)). Grid data for external plotting.
Eigen::MatrixXi copula_bin_counts(const CopulaSpec& spec, int rows, int bins,
                                  RandomStream& stream);

}  // namespace multidep
