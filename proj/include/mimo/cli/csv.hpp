// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

namespace mimo::cli {

/// In-memory CSV table. Reals use 17 significant digits; a complex value
/// fills two columns (re, im). Rows are checked against the header width.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);

  CsvWriter& operator<<(double v);
  CsvWriter& operator<<(int v);
  CsvWriter& operator<<(long long v);
  CsvWriter& operator<<(std::size_t v);
  CsvWriter& operator<<(std::complex<double> v);
  CsvWriter& operator<<(const std::string& v);
  void end_row();

  std::size_t rows() const noexcept { return rows_; }
  const std::string& str() const noexcept { return text_; }

  /// Writes to a temporary file next to `path`, then renames it into place.
  void write(const std::filesystem::path& path) const;

 private:
  void field(const std::string& f);

  std::size_t width_;
  std::size_t current_ = 0;
  std::size_t rows_ = 0;
  std::string text_;
};

std::string format_real(double v);

}  // namespace mimo::cli
