#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace mgraphon::cli {

/// 17 significant digits, so a double survives a text round trip.
std::string format_double(double x);

/// Comma-separated table with a fixed header. Cells are written as given;
/// callers format numbers with format_double.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, std::vector<std::string> header);
  CsvWriter& cell(const std::string& text);
  CsvWriter& cell(double x);
  CsvWriter& cell(std::uint64_t x);
  /// Ends the row; throws std::logic_error unless it has one cell per column.
  void end_row();

 private:
  std::ostream& out_;
  std::size_t width_;
  std::vector<std::string> row_;
};

}  // namespace mgraphon::cli
