// SPDX-License-Identifier: Apache-2.0
#include "mimo/cli/csv.hpp"

#include <cstdio>
#include <fstream>
#include <system_error>

#include "mimo/errors.hpp"

namespace mimo::cli {

std::string format_real(double v) {
  if (v == 0.0) return "0";  // folds -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(std::vector<std::string> header) : width_(header.size()) {
  for (const auto& h : header) field(h);
  end_row();
  rows_ = 0;
}

void CsvWriter::field(const std::string& f) {
  if (current_ == width_) throw Error("csv: row wider than header");
  if (current_ > 0) text_ += ',';
  text_ += f;
  ++current_;
}

CsvWriter& CsvWriter::operator<<(double v) {
  field(format_real(v));
  return *this;
}

CsvWriter& CsvWriter::operator<<(int v) {
  field(std::to_string(v));
  return *this;
}

CsvWriter& CsvWriter::operator<<(long long v) {
  field(std::to_string(v));
  return *this;
}

CsvWriter& CsvWriter::operator<<(std::size_t v) {
  field(std::to_string(v));
  return *this;
}

CsvWriter& CsvWriter::operator<<(std::complex<double> v) {
  field(format_real(v.real()));
  field(format_real(v.imag()));
  return *this;
}

CsvWriter& CsvWriter::operator<<(const std::string& v) {
  field(v);
  return *this;
}

void CsvWriter::end_row() {
  if (current_ != width_) {
    throw Error("csv: row has " + std::to_string(current_) + " fields, header has " +
                std::to_string(width_));
  }
  text_ += '\n';
  current_ = 0;
  ++rows_;
}

void CsvWriter::write(const std::filesystem::path& path) const {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << text_;
    if (!out.flush()) throw Error("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
}

}  // namespace mimo::cli
