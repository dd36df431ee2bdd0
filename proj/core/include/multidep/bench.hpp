#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "multidep/statistic.hpp"

namespace multidep {

struct BenchConfig {
  StatisticSpec spec;  // defaults to normalized-total, euclidean, copula
  int margins = 5;
  int sample_size = 100;
  int runs = 100;
  int permutation_count = 300;
  int reference_count = 100000;
  std::filesystem::path reference_path;  // built here when the file is absent
  std::uint64_t seed = 0;
  int threads = 1;
};

struct BenchResult {
  std::string method;
  double median_seconds = 0.0;  // serving one p-value, end to end
  long resamples = 0;           // B or reference count
  int runs = 0;
};

struct BenchReport {
  std::vector<BenchResult> methods;
  // Median time of the empirical transform alone; this cost is also contained
  // in every method's total since each serves the copula pipeline.
  double median_transform_seconds = 0.0;
  int margins = 0;
  int sample_size = 0;
  std::uint64_t seed = 0;
};

// Times serving one p-value per method over config.runs fresh H0 datasets
// (n iid uniform columns, drawn outside the clock). The clocked section
// mirrors a test invocation with parsed flags: permutation resamples B times;
// montecarlo-ref reads the reference file from disk and looks the statistic
// up (building the file is excluded); pearson-uniform evaluates its closed
// form; gamma reads the reference file and fits the tail. Methods whose
// preconditions the spec cannot meet (pearson-uniform on an unnormalized
// statistic) are skipped.
BenchReport run_bench(const BenchConfig& config);

}  // namespace multidep
