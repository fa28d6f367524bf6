#pragma once

#include <string>
#include <utility>
#include <vector>

namespace lkllt {

/// Rows of (scale, named metric and bound columns) produced by an experiment.
/// The first column is the scale parameter; rows are kept sorted by it.
struct RateTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::pair<std::string, std::string>> metadata;

  void add_row(std::vector<double> row);
  void sort_rows();
  /// Index of a named column; InvalidParameter when absent.
  std::size_t column_index(const std::string& name) const;
  std::vector<double> column(const std::string& name) const;

  /// Header row plus one line per row, every number printed with 17
  /// significant digits.
  std::string to_csv() const;
  /// {"metadata": {...}, "columns": {name: [...]}} with the same numbers.
  std::string to_json() const;
};

/// %.17g formatting shared by every emitter; non-finite values print as
/// "nan", "inf" or "-inf".
std::string format_number(double x);

}  // namespace lkllt
