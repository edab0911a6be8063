#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mfrac::cli {

/// Shortest text that reads back to the same double.
std::string format_shortest(double v);

/// 17 significant digits, '.' decimal separator, independent of locale.
std::string format_csv(double v);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  /// Throws std::invalid_argument if the row width differs from the header.
  void add_row(std::vector<std::string> row);
  void add_row(const std::vector<double>& row);

  const std::vector<std::string>& header() const { return header_; }
  const std::vector<std::vector<std::string>>& rows() const { return rows_; }

  /// Comma-delimited, '\n'-terminated lines.
  void write(std::ostream& out) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace mfrac::cli
