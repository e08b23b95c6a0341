#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hemato::app {

/// Output file could not be created or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shortest round-trip decimal form; "nan"/"inf" for non-finite values.
std::string format_number(double x);

/// One-header CSV file. Fields are written verbatim, so callers pass
/// numbers through format_number.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, std::vector<std::string> columns);

  void row(const std::vector<std::string>& fields);
  void row(const std::vector<double>& values);

  const std::filesystem::path& path() const { return path_; }
  const std::vector<std::string>& columns() const { return columns_; }
  std::size_t rows() const { return rows_; }

 private:
  std::filesystem::path path_;
  std::vector<std::string> columns_;
  std::ofstream os_;
  std::size_t rows_ = 0;
};

std::string optional_number(const std::optional<double>& x);

}  // namespace hemato::app
