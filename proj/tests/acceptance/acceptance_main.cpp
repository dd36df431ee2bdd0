// Acceptance gate: every release-blocking property, one pass/fail line each.
// Run all criteria (default) or a single one with --criterion k. Tolerances
// are pinned here on purpose; loosening them is a release decision, not a
// test fix.
#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "multidep/copulas.hpp"
#include "multidep/dataset.hpp"
#include "multidep/dhsic.hpp"
#include "multidep/errors.hpp"
#include "multidep/kernels.hpp"
#include "multidep/marginals.hpp"
#include "multidep/multivariance.hpp"
#include "multidep/pvalues.hpp"
#include "multidep/random.hpp"
#include "multidep/simulate.hpp"
#include "multidep/statistic.hpp"
#include "multidep/stats.hpp"
#include "multidep/transform.hpp"
#include "oracles.hpp"

using namespace multidep;

namespace {

constexpr std::uint64_t kGateSeed = 20260819;

struct Outcome {
  bool pass = false;
  std::string details;
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

Eigen::MatrixXd uniform_columns(int rows, int cols, RandomStream& stream) {
  return draw_uniforms(rows, cols, stream).values;
}

std::vector<Eigen::MatrixXd> centered_margins(const Eigen::MatrixXd& columns,
                                              const KernelSpec& kernel) {
  std::vector<Eigen::MatrixXd> mats;
  for (Eigen::Index i = 0; i < columns.cols(); ++i) {
    mats.push_back(center_kernel_matrix(
                       psi_distance_matrix(columns.middleCols(i, 1), kernel))
                       .values);
  }
  return mats;
}

bool close(double got, double want, double tol) {
  return std::abs(got - want) <= tol * std::max(1.0, std::abs(want));
}

// ---------------------------------------------------------------------------
// 1. Fast statistics match brute-force subset enumeration.

Outcome criterion_unbiased_formulas() {
  RandomStream root(kGateSeed, 1);
  double worst_multi = 0.0;

  for (int trial = 0; trial < 100; ++trial) {
    RandomStream stream = root.substream(static_cast<std::uint64_t>(trial));
    const int n = 2 + static_cast<int>(stream.bits() % 4);   // 2..5 margins
    const int rows = 4 + static_cast<int>(stream.bits() % 27);  // 4..30
    Eigen::MatrixXd columns(rows, n);
    for (int j = 0; j < rows; ++j) {
      for (int i = 0; i < n; ++i) {
        columns(j, i) = stream.uniform() < 0.3
                            ? std::floor(stream.uniform() * 3.0)
                            : stream.normal();
      }
    }
    const KernelSpec kernel =
        trial % 4 == 0 ? KernelSpec::gaussian(1.0) : KernelSpec::euclidean();
    const auto mats = centered_margins(columns, kernel);

    const double total = total_multivariance_sq(mats);
    const double total_oracle = oracles::subset_enumeration_total(mats);
    worst_multi = std::max(worst_multi, std::abs(total - total_oracle) /
                                            std::max(1.0, std::abs(total_oracle)));
    if (!close(total, total_oracle, 1e-10)) {
      return {false, "total mismatch " + fmt(total) + " vs " + fmt(total_oracle) +
                         " at trial " + std::to_string(trial)};
    }
    for (int m = 2; m <= n; ++m) {
      const double fast = m_multivariance_sq(mats, m);
      const double oracle = oracles::subset_enumeration_m(mats, m);
      worst_multi = std::max(worst_multi, std::abs(fast - oracle) /
                                              std::max(1.0, std::abs(oracle)));
      if (!close(fast, oracle, 1e-10)) {
        return {false, "m=" + std::to_string(m) + " mismatch at trial " +
                           std::to_string(trial)};
      }
    }
  }

  double worst_dhsic = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    RandomStream stream = root.substream(1000 + static_cast<std::uint64_t>(trial));
    const int n = trial % 2 == 0 ? 2 : 3;
    // keep the 2n-fold index oracle tractable; a few trials sit at the corner
    const int cap = n == 2 ? 12 : (trial < 6 ? 12 : 10);
    const int rows = 4 + static_cast<int>(stream.bits() % (cap - 3));
    const double delta = 0.5 + 2.5 * stream.uniform();
    Eigen::MatrixXd columns(rows, n);
    for (int j = 0; j < rows; ++j)
      for (int i = 0; i < n; ++i) columns(j, i) = stream.normal();

    std::vector<Eigen::MatrixXd> grams;
    for (int i = 0; i < n; ++i)
      grams.push_back(gram_matrix(columns.middleCols(i, 1),
                                  KernelSpec::gaussian(delta)));
    const double fast = dhsic_from_grams(grams);
    const double oracle = oracles::expanded_dhsic(columns, delta);
    worst_dhsic = std::max(worst_dhsic, std::abs(fast - oracle));
    if (std::abs(fast - oracle) > 1e-12) {
      return {false, "dhsic mismatch " + fmt(fast) + " vs " + fmt(oracle) +
                         " at trial " + std::to_string(trial)};
    }
  }

  return {true, "multivariance worst rel err " + fmt(worst_multi) +
                    " (tol 1e-10), dhsic worst abs err " + fmt(worst_dhsic) +
                    " (tol 1e-12)"};
}

// ---------------------------------------------------------------------------
// 2. Transform: rank identity, affine invariance, uniform convergence.

Outcome criterion_transform() {
  // rank identity on a tie-free column
  {
    RandomStream stream(kGateSeed, 2);
    const int rows = 1000;
    Eigen::MatrixXd values(rows, 1);
    for (int j = 0; j < rows; ++j) values(j, 0) = stream.normal();
    const UniformDraws draws = draw_uniforms(rows, 1, stream);
    const Dataset data(values, Grouping::univariate(1));
    const TransformedDataset t = empirical_transform(data, draws);

    std::vector<int> order(rows);
    for (int j = 0; j < rows; ++j) order[static_cast<std::size_t>(j)] = j;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return values(a, 0) < values(b, 0); });
    for (int rank = 0; rank < rows; ++rank) {
      const int j = order[static_cast<std::size_t>(rank)];
      const double expected = (rank + draws.values(j, 0)) / rows;
      if (t.values(j, 0) != expected) {
        return {false, "rank identity broken at rank " + std::to_string(rank)};
      }
    }

    // strictly increasing affine map, bit-exact invariance
    Eigen::MatrixXd mapped = 4.75 * values.array() - 12.0;
    const Dataset moved(mapped, Grouping::univariate(1));
    if (empirical_transform(moved, draws).values != t.values) {
      return {false, "affine map changed the transform"};
    }
  }

  // Glivenko-Cantelli at N = 1e4 against a mixed law: atoms of mass 0.25 at
  // 0.3 and 0.2 at 0.7, plus 0.55 uniform weight. Threshold from the DKW
  // inequality: the grid error is a u-blend of the left and right ecdf gaps,
  // so P(sup > eps) <= 4 exp(-2 N eps^2); eps = 0.0185 puts that near 0.4%.
  const double threshold = 0.0185;
  UnivariateLaw law;
  law.prob_below = [](double x) {
    const double cont = 0.55 * std::clamp(x, 0.0, 1.0);
    return cont + (x > 0.3 ? 0.25 : 0.0) + (x > 0.7 ? 0.2 : 0.0);
  };
  law.point_mass = [](double x) {
    if (x == 0.3) return 0.25;
    if (x == 0.7) return 0.2;
    return 0.0;
  };

  const int sample_size = 10000;
  int gc_pass = 0;
  double worst_sup = 0.0;
  RandomStream gc_root(kGateSeed, 3);
  for (int seed = 0; seed < 100; ++seed) {
    RandomStream stream = gc_root.substream(static_cast<std::uint64_t>(seed));
    std::vector<double> sample(static_cast<std::size_t>(sample_size));
    for (double& v : sample) {
      const double pick = stream.uniform();
      if (pick < 0.25) {
        v = 0.3;
      } else if (pick < 0.45) {
        v = 0.7;
      } else {
        v = stream.uniform();
      }
    }
    double sup = 0.0;
    for (int gx = 0; gx <= 20; ++gx) {
      const double x = gx / 20.0;
      for (double u : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        const double empirical = empirical_transform_value(x, u, sample);
        const double population = population_transform(x, u, law);
        sup = std::max(sup, std::abs(empirical - population));
      }
    }
    worst_sup = std::max(worst_sup, sup);
    if (sup <= threshold) ++gc_pass;
  }
  if (gc_pass < 99) {
    return {false, "uniform convergence: only " + std::to_string(gc_pass) +
                       "/100 seeds under " + fmt(threshold) + ", worst sup " +
                       fmt(worst_sup)};
  }
  return {true, "rank identity and affine invariance exact; sup error <= " +
                    fmt(threshold) + " in " + std::to_string(gc_pass) +
                    "/100 seeds (worst " + fmt(worst_sup) + ")"};
}

// ---------------------------------------------------------------------------
// 3. Size under H0 at n=5, N=100 for every p-value method.

Outcome criterion_size() {
  const int margins = 5;
  const int rows = 100;
  const int reps = 1000;
  const double alpha = 0.05;

  StatisticSpec nt;  // normalized-total on euclidean, with the transform
  StatisticSpec dh;
  dh.kind = StatisticKind::dhsic;
  dh.kernel = KernelSpec::gaussian(3.0);

  RandomStream root(kGateSeed, 4);
  const ReferenceDistribution ref_nt = build_h0_reference(
      nt, Grouping::univariate(margins), rows, 100000, root.substream(1).substream(0));
  const ReferenceDistribution ref_dh = build_h0_reference(
      dh, Grouping::univariate(margins), rows, 100000, root.substream(1).substream(1));

  int rej_perm_nt = 0, rej_ref_nt = 0, rej_pearson = 0;
  int rej_perm_dh = 0, rej_ref_dh = 0;
  int pearson_not_anticonservative = 0;

  for (int rep = 0; rep < reps; ++rep) {
    RandomStream rep_stream = root.substream(0).substream(static_cast<std::uint64_t>(rep));
    RandomStream data_stream = rep_stream.substream(0);
    RandomStream draw_stream = rep_stream.substream(1);
    RandomStream method_stream = rep_stream.substream(2);

    const Dataset data(uniform_columns(rows, margins, data_stream),
                       Grouping::univariate(margins));
    const UniformDraws draws = draw_uniforms(rows, margins, draw_stream);

    const double p_perm_nt =
        permutation_pvalue(data, draws, nt, 300, method_stream.substream(0)).pvalue;
    const double p_ref_nt = reference_pvalue(data, draws, nt, ref_nt, 0).pvalue;
    const double p_pearson = pearson_uniform_report(data, draws, nt, 0).pvalue;
    const double p_perm_dh =
        permutation_pvalue(data, draws, dh, 300, method_stream.substream(1)).pvalue;
    const double p_ref_dh = reference_pvalue(data, draws, dh, ref_dh, 0).pvalue;

    rej_perm_nt += p_perm_nt <= alpha;
    rej_ref_nt += p_ref_nt <= alpha;
    rej_pearson += p_pearson <= alpha;
    rej_perm_dh += p_perm_dh <= alpha;
    rej_ref_dh += p_ref_dh <= alpha;
    pearson_not_anticonservative += p_pearson >= p_ref_nt - 0.005;
  }

  const auto rate = [&](int count) { return static_cast<double>(count) / reps; };
  std::ostringstream detail;
  detail << "rates perm=" << fmt(rate(rej_perm_nt)) << "/"
         << fmt(rate(rej_perm_dh)) << " mcref=" << fmt(rate(rej_ref_nt)) << "/"
         << fmt(rate(rej_ref_dh)) << " pearson=" << fmt(rate(rej_pearson))
         << " (multivariance/dhsic), pearson>=mcref-0.005 in "
         << pearson_not_anticonservative << "/1000";

  for (int count : {rej_perm_nt, rej_ref_nt, rej_pearson, rej_perm_dh, rej_ref_dh}) {
    if (rate(count) < 0.035 || rate(count) > 0.065) {
      return {false, "size outside [0.035, 0.065]: " + detail.str()};
    }
  }
  if (pearson_not_anticonservative < 900) {
    return {false, "pearson anti-conservative too often: " + detail.str()};
  }
  return {true, detail.str()};
}

// ---------------------------------------------------------------------------
// 4. Consistency: comonotone pairs reject; coin triple is caught only by the
//    three-margin statistic.

Outcome criterion_consistency() {
  StatisticSpec nm;  // normalized full-set multivariance
  nm.kind = StatisticKind::normalized;
  StatisticSpec dh;
  dh.kind = StatisticKind::dhsic;
  dh.kernel = KernelSpec::gaussian(3.0);

  RandomStream root(kGateSeed, 5);
  int both_reject = 0;
  for (int seed = 0; seed < 100; ++seed) {
    RandomStream stream = root.substream(static_cast<std::uint64_t>(seed));
    const int rows = 200;
    Eigen::MatrixXd columns(rows, 2);
    for (int j = 0; j < rows; ++j) {
      columns(j, 0) = stream.normal();
      columns(j, 1) = columns(j, 0);
    }
    const Dataset data(columns, Grouping::univariate(2));
    const UniformDraws draws = draw_uniforms(rows, 2, stream);
    const double p_nm =
        permutation_pvalue(data, draws, nm, 300, stream.substream(1)).pvalue;
    const double p_dh =
        permutation_pvalue(data, draws, dh, 300, stream.substream(2)).pvalue;
    if (p_nm < 0.01 && p_dh < 0.01) ++both_reject;
  }
  if (both_reject < 99) {
    return {false, "comonotone pair rejected in only " +
                       std::to_string(both_reject) + "/100 seeds"};
  }

  // coin triple: pairwise independent, jointly dependent
  const int rows = 100;
  const int reps = 1000;
  RandomStream coin_root(kGateSeed, 6);
  const ReferenceDistribution ref3 = build_h0_reference(
      nm, Grouping::univariate(3), rows, 100000, coin_root.substream(1).substream(0));
  const ReferenceDistribution ref2 = build_h0_reference(
      nm, Grouping::univariate(2), rows, 100000, coin_root.substream(1).substream(1));

  int triple_reject = 0;
  int pair_reject[3] = {0, 0, 0};
  const int pair_cols[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  for (int rep = 0; rep < reps; ++rep) {
    RandomStream rep_stream =
        coin_root.substream(0).substream(static_cast<std::uint64_t>(rep));
    RandomStream data_stream = rep_stream.substream(0);
    RandomStream draw_stream = rep_stream.substream(1);
    const Dataset coins = bernstein_coins(rows, 0.0, data_stream);
    const UniformDraws draws = draw_uniforms(rows, 3, draw_stream);

    if (reference_pvalue(coins, draws, nm, ref3, 0).pvalue <= 0.05) ++triple_reject;
    for (int pair = 0; pair < 3; ++pair) {
      Eigen::MatrixXd sub(rows, 2);
      Eigen::MatrixXd sub_draws(rows, 2);
      for (int c = 0; c < 2; ++c) {
        sub.col(c) = coins.values().col(pair_cols[pair][c]);
        sub_draws.col(c) = draws.values.col(pair_cols[pair][c]);
      }
      const Dataset pair_data(sub, Grouping::univariate(2));
      const double p =
          reference_pvalue(pair_data, UniformDraws{sub_draws}, nm, ref2, 0).pvalue;
      if (p <= 0.05) ++pair_reject[pair];
    }
  }

  const double triple_rate = triple_reject / static_cast<double>(reps);
  std::ostringstream detail;
  detail << "comonotone " << both_reject << "/100; coins triple rate "
         << fmt(triple_rate) << ", pairwise rates " << fmt(pair_reject[0] / 1000.0)
         << " " << fmt(pair_reject[1] / 1000.0) << " "
         << fmt(pair_reject[2] / 1000.0);

  // "markedly above nominal": pinned at four times the level
  if (triple_rate < 0.20) {
    return {false, "triple statistic too weak: " + detail.str()};
  }
  for (int pair = 0; pair < 3; ++pair) {
    const double rate = pair_reject[pair] / static_cast<double>(reps);
    if (rate < 0.035 || rate > 0.065) {
      return {false, "pairwise size off nominal: " + detail.str()};
    }
  }
  return {true, detail.str()};
}

// ---------------------------------------------------------------------------
// 5. Power grows with dependence strength.

Outcome criterion_power_monotone() {
  PowerConfig config;
  for (double tau : {0.0, 0.1, 0.2}) {
    CopulaSpec spec;
    spec.family = CopulaFamily::normal;
    spec.tau = tau;
    config.copulas.push_back(spec);
  }
  config.marginals = {MarginalKind::U};
  StatisticSpec nt;
  StatisticSpec dh;
  dh.kind = StatisticKind::dhsic;
  dh.kernel = KernelSpec::gaussian(3.0);
  config.statistics = {nt, dh};
  config.method = "montecarlo-ref";
  config.margins = 5;
  config.sample_size = 100;
  config.repetitions = 1000;
  config.reference_count = 100000;

  const PowerTable table = power_study(config, RandomStream(kGateSeed, 7));
  std::ostringstream detail;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    detail << (c == 0 ? "" : "; ") << table.columns[c] << ":";
    for (const PowerRow& row : table.rows) {
      detail << " " << fmt(row.power_percent[c]);
    }
  }
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    for (std::size_t r = 1; r < table.rows.size(); ++r) {
      if (!(table.rows[r].power_percent[c] > table.rows[r - 1].power_percent[c])) {
        return {false, "power not strictly increasing: " + detail.str()};
      }
    }
  }
  return {true, detail.str()};
}

// ---------------------------------------------------------------------------
// 6. Approximate uniform reference agrees with exact per-marginal references.

Outcome criterion_reference_agreement() {
  const int margins = 5;
  const int rows = 100;
  const int runs = 1000;
  StatisticSpec nt;

  RandomStream root(kGateSeed, 8);
  const ReferenceDistribution approx = build_h0_reference(
      nt, Grouping::univariate(margins), rows, 100000, root.substream(1));

  std::ostringstream detail;
  bool pass = true;
  int marginal_index = 0;
  for (MarginalKind kind : all_marginals()) {
    const ReferenceDistribution exact = exact_h0_reference(
        nt, kind, margins, rows, 100000,
        root.substream(2).substream(static_cast<std::uint64_t>(marginal_index)));

    int qualifying = 0;
    int agree = 0;
    for (int run = 0; run < runs; ++run) {
      RandomStream rep_stream =
          root.substream(3)
              .substream(static_cast<std::uint64_t>(marginal_index))
              .substream(static_cast<std::uint64_t>(run));
      RandomStream data_stream = rep_stream.substream(0);
      RandomStream draw_stream = rep_stream.substream(1);
      Eigen::MatrixXd columns(rows, margins);
      for (int j = 0; j < rows; ++j)
        for (int i = 0; i < margins; ++i)
          columns(j, i) = marginal_quantile(kind, data_stream.uniform());
      const Dataset data(columns, Grouping::univariate(margins));
      const UniformDraws draws = draw_uniforms(rows, margins, draw_stream);
      const double scaled = evaluate_statistic(data, draws, nt).scaled;
      const double p_exact = exact.pvalue(scaled);
      const double p_approx = approx.pvalue(scaled);
      if (std::min(p_exact, p_approx) <= 0.1) {
        ++qualifying;
        if (std::abs(p_exact - p_approx) <= 0.01) ++agree;
      }
    }
    const double share =
        qualifying > 0 ? agree / static_cast<double>(qualifying) : 1.0;
    detail << (marginal_index == 0 ? "" : ", ") << marginal_token(kind) << " "
           << agree << "/" << qualifying;
    if (qualifying < 30 || share < 0.95) pass = false;
    ++marginal_index;
  }
  return {pass, detail.str() + " (tail runs within 0.01, need >= 95%)"};
}

// ---------------------------------------------------------------------------
// 7. Copula sampling fidelity: Kendall tau on target, margins KS-uniform.

Outcome criterion_simulation_fidelity() {
  const CopulaFamily dependent[5] = {CopulaFamily::clayton, CopulaFamily::gumbel,
                                     CopulaFamily::frank, CopulaFamily::normal,
                                     CopulaFamily::student};
  RandomStream root(kGateSeed, 9);
  double worst_gap = 0.0;
  for (int f = 0; f < 5; ++f) {
    for (double tau : {0.1, 0.3}) {
      for (int seed = 0; seed < 2; ++seed) {
        CopulaSpec spec;
        spec.family = dependent[f];
        spec.tau = tau;
        RandomStream stream = root.substream(
            static_cast<std::uint64_t>(100 * f + 10 * seed + (tau > 0.2)));
        const Eigen::MatrixXd u = sample_copula(spec, 10000, stream);
        std::vector<double> x(u.col(0).data(), u.col(0).data() + u.rows());
        std::vector<double> y(u.col(1).data(), u.col(1).data() + u.rows());
        const double gap = std::abs(kendall_tau(x, y) - tau);
        worst_gap = std::max(worst_gap, gap);
        if (gap > 0.02) {
          return {false, "tau off target by " + fmt(gap) + " for " +
                             spec.label() + " at tau " + fmt(tau)};
        }
      }
    }
  }

  // all margins of all families stay uniform
  int checks = 0;
  int ok = 0;
  const double critical = ks_uniform_critical(500, 0.01);
  RandomStream ks_root(kGateSeed, 10);
  for (int seed = 0; seed < 400; ++seed) {
    CopulaSpec spec;
    const int pick = seed % 6;
    if (pick > 0) {
      spec.family = dependent[pick - 1];
      spec.tau = 0.3;
    }
    spec.dimension = 3;
    RandomStream stream = ks_root.substream(static_cast<std::uint64_t>(seed));
    const Eigen::MatrixXd u = sample_copula(spec, 500, stream);
    for (int c = 0; c < 3; ++c) {
      std::vector<double> column(u.col(c).data(), u.col(c).data() + u.rows());
      ++checks;
      if (ks_uniform_statistic(std::move(column)) <= critical) ++ok;
    }
  }
  const double share = ok / static_cast<double>(checks);
  std::ostringstream detail;
  detail << "worst tau gap " << fmt(worst_gap) << " (tol 0.02); KS-uniform " << ok
         << "/" << checks;
  if (share < 0.98) {
    return {false, detail.str()};
  }
  return {true, detail.str()};
}

// ---------------------------------------------------------------------------
// 8. Method cost ordering through the benchmark command.

Outcome criterion_method_cost() {
  const char* cli = std::getenv("MULTIDEP_CLI");
  if (cli == nullptr || *cli == '\0') {
    return {false, "MULTIDEP_CLI is not set; run through ctest"};
  }
  const std::filesystem::path ref =
      std::filesystem::temp_directory_path() / "multidep-acceptance-bench.ref";
  std::filesystem::remove(ref);
  const std::string command = std::string(cli) +
                              " bench --N 100 --n 5 --runs 100 --B 300"
                              " --ref-count 100000 --ref " +
                              ref.string() + " --seed 20260819 2>&1";
  std::string output;
  {
    std::FILE* pipe = popen(command.c_str(), "r");
    if (pipe == nullptr) {
      return {false, "cannot spawn the benchmark"};
    }
    char buffer[4096];
    while (std::fgets(buffer, sizeof buffer, pipe)) output += buffer;
    const int status = pclose(pipe);
    if (status != 0) {
      return {false, "benchmark exited with status " + std::to_string(status) +
                         ": " + output.substr(0, 200)};
    }
  }
  std::filesystem::remove(ref);

  std::map<std::string, double> medians;
  std::istringstream lines(output);
  std::string line;
  while (std::getline(lines, line)) {
    const std::string prefix = "median_seconds.";
    if (line.rfind(prefix, 0) == 0) {
      const auto eq = line.find('=');
      if (eq != std::string::npos) {
        medians[line.substr(prefix.size(), eq - prefix.size())] =
            std::strtod(line.c_str() + eq + 1, nullptr);
      }
    }
  }
  for (const char* method : {"pearson-uniform", "montecarlo-ref", "permutation"}) {
    if (medians.find(method) == medians.end()) {
      return {false, std::string("benchmark output lacks ") + method + ": " +
                         output.substr(0, 200)};
    }
  }
  const double pearson = medians["pearson-uniform"];
  const double mcref = medians["montecarlo-ref"];
  const double perm = medians["permutation"];
  std::ostringstream detail;
  detail << "median seconds per p-value: pearson " << fmt(pearson) << ", mcref "
         << fmt(mcref) << ", permutation " << fmt(perm);
  if (!(pearson < mcref && mcref < perm)) {
    return {false, "cost ordering violated: " + detail.str()};
  }
  return {true, detail.str()};
}

struct Criterion {
  int number;
  const char* name;
  std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {1, "estimator oracles", criterion_unbiased_formulas},
      {2, "transform correctness", criterion_transform},
      {3, "size under independence", criterion_size},
      {4, "consistency against alternatives", criterion_consistency},
      {5, "power monotonicity", criterion_power_monotone},
      {6, "approximate vs exact reference", criterion_reference_agreement},
      {7, "simulation fidelity", criterion_simulation_fidelity},
      {8, "method cost ordering", criterion_method_cost},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = std::atoi(argv[i + 1]);
      ++i;
    } else {
      std::fprintf(stderr, "usage: %s [--criterion k]\n", argv[0]);
      return 2;
    }
  }

  bool all_pass = true;
  for (const Criterion& criterion : criteria()) {
    if (only != 0 && criterion.number != only) continue;
    Outcome outcome;
    try {
      outcome = criterion.run();
    } catch (const std::exception& error) {
      outcome = {false, std::string("exception: ") + error.what()};
    }
    std::printf("criterion %d (%s): %s; %s\n", criterion.number, criterion.name,
                outcome.pass ? "PASS" : "FAIL", outcome.details.c_str());
    std::fflush(stdout);
    all_pass = all_pass && outcome.pass;
  }
  return all_pass ? 0 : 1;
}
