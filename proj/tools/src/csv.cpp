#include "mgraphon_cli/csv.hpp"

#include <cstdio>
#include <stdexcept>

namespace mgraphon::cli {

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

CsvWriter::CsvWriter(std::ostream& out, std::vector<std::string> header) : out_(out), width_(header.size()) {
  row_ = std::move(header);
  end_row();
}

CsvWriter& CsvWriter::cell(const std::string& text) {
  if (text.find_first_of(",\"\n") != std::string::npos) {
    std::string quoted = "\"";
    for (char c : text) quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
    row_.push_back(quoted + "\"");
  } else {
    row_.push_back(text);
  }
  return *this;
}

CsvWriter& CsvWriter::cell(double x) { return cell(format_double(x)); }

CsvWriter& CsvWriter::cell(std::uint64_t x) { return cell(std::to_string(x)); }

void CsvWriter::end_row() {
  if (row_.size() != width_) throw std::logic_error("CsvWriter: row width mismatch");
  for (std::size_t i = 0; i < row_.size(); ++i) out_ << (i ? "," : "") << row_[i];
  out_ << '\n';
  row_.clear();
}

}  // namespace mgraphon::cli
