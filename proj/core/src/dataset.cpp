#include "multidep/dataset.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "multidep/errors.hpp"
#include "multidep/random.hpp"

namespace multidep {

Grouping::Grouping(std::vector<int> widths) : widths_(std::move(widths)) {
  if (widths_.empty()) {
    throw ConfigError("grouping needs at least one margin");
  }
  offsets_.reserve(widths_.size());
  for (int w : widths_) {
    if (w <= 0) {
      throw ConfigError("margin widths must be positive");
    }
    offsets_.push_back(total_);
    total_ += w;
  }
}

Grouping Grouping::parse(const std::string& text) {
  std::vector<int> widths;
  std::stringstream ss(text);
  std::string field;
  while (std::getline(ss, field, ',')) {
    int w = 0;
    const auto* begin = field.data();
    const auto* end = begin + field.size();
    const auto res = std::from_chars(begin, end, w);
    if (res.ec != std::errc() || res.ptr != end) {
      throw ConfigError("invalid grouping element '" + field + "'");
    }
    widths.push_back(w);
  }
  if (widths.empty()) {
    throw ConfigError("empty grouping '" + text + "'");
  }
  return Grouping(std::move(widths));
}

Grouping Grouping::univariate(int margins, int width) {
  if (margins <= 0) {
    throw ConfigError("margin count must be positive");
  }
  return Grouping(std::vector<int>(static_cast<std::size_t>(margins), width));
}

bool Grouping::all_univariate() const {
  for (int w : widths_) {
    if (w != 1) {
      return false;
    }
  }
  return true;
}

Dataset::Dataset(Eigen::MatrixXd values, Grouping grouping,
                 std::vector<std::string> column_names)
    : values_(std::move(values)),
      grouping_(std::move(grouping)),
      column_names_(std::move(column_names)) {
  if (values_.rows() < 1) {
    throw DataError("dataset needs at least one observation");
  }
  if (values_.cols() != grouping_.total_columns()) {
    throw DataError("grouping sum " + std::to_string(grouping_.total_columns()) +
                    " ≠ " + std::to_string(values_.cols()) + " columns");
  }
  if (!column_names_.empty() &&
      static_cast<int>(column_names_.size()) != values_.cols()) {
    throw DataError("column name count does not match column count");
  }
  if (!values_.allFinite()) {
    for (Eigen::Index r = 0; r < values_.rows(); ++r) {
      for (Eigen::Index c = 0; c < values_.cols(); ++c) {
        if (!std::isfinite(values_(r, c))) {
          throw DataError("non-finite value at row " + std::to_string(r + 1) +
                          ", column " + std::to_string(c + 1));
        }
      }
    }
  }
}

Eigen::Ref<const Eigen::MatrixXd> Dataset::margin(int i) const {
  return values_.middleCols(grouping_.offset(i), grouping_.width(i));
}

UniformDraws draw_uniforms(int rows, int columns, RandomStream& stream) {
  if (rows < 1 || columns < 1) {
    throw ConfigError("uniform draw shape must be positive");
  }
  Eigen::MatrixXd m(rows, columns);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < columns; ++c) {
      m(r, c) = stream.uniform();
    }
  }
  return UniformDraws{std::move(m)};
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string::size_type start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    std::string field = line.substr(start, comma == std::string::npos
                                               ? std::string::npos
                                               : comma - start);
    // Trim surrounding spaces and a stray carriage return.
    const auto first = field.find_first_not_of(" \t\r");
    const auto last = field.find_last_not_of(" \t\r");
    fields.push_back(first == std::string::npos
                         ? std::string()
                         : field.substr(first, last - first + 1));
    if (comma == std::string::npos) {
      break;
    }
    start = comma + 1;
  }
  return fields;
}

}  // namespace

Dataset load_dataset(const std::filesystem::path& path, const Grouping& grouping) {
  std::ifstream in(path);
  if (!in) {
    throw DataError("cannot open dataset file '" + path.string() + "'");
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw DataError("dataset file '" + path.string() + "' is empty");
  }
  const std::vector<std::string> names = split_fields(line);
  const int columns = static_cast<int>(names.size());
  if (columns != grouping.total_columns()) {
    throw DataError("grouping sum " + std::to_string(grouping.total_columns()) +
                    " ≠ " + std::to_string(columns) + " columns");
  }

  std::vector<double> cells;
  int rows = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") {
      continue;
    }
    const std::vector<std::string> fields = split_fields(line);
    ++rows;
    if (static_cast<int>(fields.size()) != columns) {
      throw DataError("row " + std::to_string(rows) + " has " +
                      std::to_string(fields.size()) + " fields, expected " +
                      std::to_string(columns));
    }
    for (int c = 0; c < columns; ++c) {
      const std::string& f = fields[static_cast<std::size_t>(c)];
      double v = 0.0;
      const auto* begin = f.data();
      const auto* end = begin + f.size();
      const auto res = std::from_chars(begin, end, v);
      if (res.ec != std::errc() || res.ptr != end) {
        throw DataError("non-numeric cell at row " + std::to_string(rows) +
                        ", column " + std::to_string(c + 1) + ": '" + f + "'");
      }
      if (!std::isfinite(v)) {
        throw DataError("non-finite value at row " + std::to_string(rows) +
                        ", column " + std::to_string(c + 1));
      }
      cells.push_back(v);
    }
  }
  if (rows == 0) {
    throw DataError("dataset file '" + path.string() + "' has no data rows");
  }

  Eigen::MatrixXd values(rows, columns);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < columns; ++c) {
      values(r, c) = cells[static_cast<std::size_t>(r) * columns + c];
    }
  }
  return Dataset(std::move(values), grouping, names);
}

std::vector<std::string> default_column_names(int columns) {
  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(columns));
  for (int c = 1; c <= columns; ++c) {
    names.push_back("x" + std::to_string(c));
  }
  return names;
}

void write_csv(const std::filesystem::path& path, const Eigen::MatrixXd& values,
               const std::vector<std::string>& column_names) {
  if (!column_names.empty() &&
      static_cast<int>(column_names.size()) != values.cols()) {
    throw ConfigError("column name count does not match column count");
  }
  std::ofstream out(path);
  if (!out) {
    throw DataError("cannot write dataset file '" + path.string() + "'");
  }
  const std::vector<std::string> names =
      column_names.empty() ? default_column_names(static_cast<int>(values.cols()))
                           : column_names;
  for (std::size_t c = 0; c < names.size(); ++c) {
    out << (c == 0 ? "" : ",") << names[c];
  }
  out << "\n";
  char buf[64];
  for (Eigen::Index r = 0; r < values.rows(); ++r) {
    for (Eigen::Index c = 0; c < values.cols(); ++c) {
      // Shortest representation that round-trips to the same double.
      const auto res = std::to_chars(buf, buf + sizeof buf, values(r, c));
      if (c > 0) {
        out << ',';
      }
      out.write(buf, res.ptr - buf);
    }
    out << "\n";
  }
  if (!out) {
    throw DataError("failed writing dataset file '" + path.string() + "'");
  }
}

}  // namespace multidep
