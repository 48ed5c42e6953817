// Deterministic CSV output: UTF-8, header row, '.' decimal separator,
// 17 significant digits for doubles.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace liewave {

// Shortest text that still round-trips the exact double value ("%.17g").
std::string csv_double(double value);

class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);

  CsvWriter& cell(double value);
  CsvWriter& cell(std::int64_t value);
  CsvWriter& cell(const std::string& value);
  void end_row();

  const std::string& str() const { return body_; }
  void write(std::ostream& out) const;
  void write_file(const std::string& path) const;

 private:
  std::size_t columns_;
  std::size_t cells_in_row_ = 0;
  std::string body_;
};

}  // namespace liewave
