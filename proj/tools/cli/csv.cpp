#include "csv.hpp"

#include <array>
#include <charconv>
#include <stdexcept>

namespace mfrac::cli {

std::string format_shortest(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

std::string format_csv(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::add_row(std::vector<std::string> row) {
  if (row.size() != header_.size()) {
    throw std::invalid_argument("CSV row has " + std::to_string(row.size()) + " fields, expected " +
                                std::to_string(header_.size()));
  }
  rows_.push_back(std::move(row));
}

void CsvTable::add_row(const std::vector<double>& row) {
  std::vector<std::string> text;
  text.reserve(row.size());
  for (double v : row) text.push_back(format_csv(v));
  add_row(std::move(text));
}

void CsvTable::write(std::ostream& out) const {
  auto line = [&out](const std::vector<std::string>& fields) {
    for (std::size_t j = 0; j < fields.size(); ++j) {
      if (j) out << ',';
      out << fields[j];
    }
    out << '\n';
  };
  line(header_);
  for (const auto& r : rows_) line(r);
}

}  // namespace mfrac::cli
