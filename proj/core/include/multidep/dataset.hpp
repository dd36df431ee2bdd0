#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <string>
#include <vector>

namespace multidep {

class RandomStream;

// Partition of dataset columns into contiguous margins of positive widths.
class Grouping {
 public:
  explicit Grouping(std::vector<int> widths);

  // Parses "1,1,2" style width lists.
  static Grouping parse(const std::string& text);
  // n margins of equal width (default univariate).
  static Grouping univariate(int margins, int width = 1);

  int margins() const { return static_cast<int>(widths_.size()); }
  int width(int i) const { return widths_[static_cast<std::size_t>(i)]; }
  int offset(int i) const { return offsets_[static_cast<std::size_t>(i)]; }
  int total_columns() const { return total_; }
  bool all_univariate() const;
  const std::vector<int>& widths() const { return widths_; }
  bool operator==(const Grouping& other) const { return widths_ == other.widths_; }

 private:
  std::vector<int> widths_;
  std::vector<int> offsets_;
  int total_ = 0;
};

// N observations of D real columns, partitioned into margins by a Grouping.
// Immutable after construction; entries are finite.
class Dataset {
 public:
  Dataset(Eigen::MatrixXd values, Grouping grouping,
          std::vector<std::string> column_names = {});

  int observations() const { return static_cast<int>(values_.rows()); }
  int margins() const { return grouping_.margins(); }
  int columns() const { return static_cast<int>(values_.cols()); }
  const Eigen::MatrixXd& values() const { return values_; }
  const Grouping& grouping() const { return grouping_; }
  const std::vector<std::string>& column_names() const { return column_names_; }
  Eigen::Ref<const Eigen::MatrixXd> margin(int i) const;

 private:
  Eigen::MatrixXd values_;
  Grouping grouping_;
  std::vector<std::string> column_names_;
};

// Auxiliary uniforms, one per data cell, in [0, 1).
struct UniformDraws {
  Eigen::MatrixXd values;
};

// Fills the matrix row-major (row 0 left to right, then row 1, ...) so the
// draw consumed by a given cell is independent of the matrix shape traversal.
UniformDraws draw_uniforms(int rows, int columns, RandomStream& stream);

// Margin-wise empirically transformed copy of a dataset; entries in [0, 1).
struct TransformedDataset {
  Eigen::MatrixXd values;
  Grouping grouping;

  Eigen::Ref<const Eigen::MatrixXd> margin(int i) const {
    return values.middleCols(grouping.offset(i), grouping.width(i));
  }
};

// CSV with one header row; values parsed as 64-bit floats. Errors name the
// offending row and column.
Dataset load_dataset(const std::filesystem::path& path, const Grouping& grouping);

// Writes a header row and the matrix with shortest round-trip formatting, so
// write-then-load reproduces values bit-exactly.
void write_csv(const std::filesystem::path& path, const Eigen::MatrixXd& values,
               const std::vector<std::string>& column_names);

// Column names x1..xD when a dataset carries none.
std::vector<std::string> default_column_names(int columns);

}  // namespace multidep
