#include "liewave/csv.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace liewave {

std::string csv_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

CsvWriter::CsvWriter(std::vector<std::string> header)
    : columns_(header.size()) {
  if (header.empty()) throw std::invalid_argument("CSV header must be nonempty");
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) body_ += ',';
    body_ += header[i];
  }
  body_ += '\n';
}

CsvWriter& CsvWriter::cell(double value) { return cell(csv_double(value)); }

CsvWriter& CsvWriter::cell(std::int64_t value) {
  return cell(std::to_string(value));
}

CsvWriter& CsvWriter::cell(const std::string& value) {
  if (cells_in_row_ >= columns_)
    throw std::logic_error("CSV row has more cells than header columns");
  if (cells_in_row_) body_ += ',';
  body_ += value;
  ++cells_in_row_;
  return *this;
}

void CsvWriter::end_row() {
  if (cells_in_row_ != columns_)
    throw std::logic_error("CSV row has fewer cells than header columns");
  body_ += '\n';
  cells_in_row_ = 0;
}

void CsvWriter::write(std::ostream& out) const { out << body_; }

void CsvWriter::write_file(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << body_;
}

}  // namespace liewave
