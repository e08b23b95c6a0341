#include "csv.hpp"

#include <charconv>
#include <cmath>

namespace hemato::app {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string optional_number(const std::optional<double>& x) { return x ? format_number(*x) : std::string(); }

CsvWriter::CsvWriter(const std::filesystem::path& path, std::vector<std::string> columns)
    : path_(path), columns_(std::move(columns)), os_(path, std::ios::binary | std::ios::trunc) {
  if (!os_) throw IoError("cannot open " + path.string() + " for writing");
  row(columns_);
  rows_ = 0;
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) os_ << ',';
    os_ << fields[i];
  }
  os_ << '\n';
  if (!os_) throw IoError("write failed on " + path_.string());
  ++rows_;
}

void CsvWriter::row(const std::vector<double>& values) {
  std::vector<std::string> f;
  f.reserve(values.size());
  for (double v : values) f.push_back(format_number(v));
  row(f);
}

}  // namespace hemato::app
