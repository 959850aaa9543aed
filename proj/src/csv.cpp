#include "kdsky/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <vector>

#include "kdsky/error.hpp"

namespace kdsky {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    std::size_t comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

std::string at_line(std::size_t line) { return "line " + std::to_string(line) + ": "; }

}  // namespace

Dataset read_dataset_csv(std::istream& in, CoordinateMode mode) {
  std::string line;
  std::size_t line_no = 0;
  std::size_t dim = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty()) break;
  }
  if (trim(line).empty()) fail(ErrorCode::ParseError, "empty CSV: missing header `x1,...,xd`");

  auto header = split(trim(line));
  dim = header.size();
  for (std::size_t j = 0; j < dim; ++j) {
    if (header[j] != "x" + std::to_string(j + 1)) {
      fail(ErrorCode::ParseError, at_line(line_no) + "header field " + std::to_string(j + 1) +
                                      " is '" + std::string(header[j]) + "', expected 'x" +
                                      std::to_string(j + 1) + "'");
    }
  }

  Dataset data(dim, mode);
  std::vector<double> row(dim);
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view body = trim(line);
    if (body.empty()) continue;
    auto fields = split(body);
    if (fields.size() != dim) {
      fail(ErrorCode::DimensionMismatch, at_line(line_no) + "expected " + std::to_string(dim) +
                                             " fields, got " + std::to_string(fields.size()));
    }
    for (std::size_t j = 0; j < dim; ++j) {
      std::string_view f = fields[j];
      if (!f.empty() && f.front() == '+') f.remove_prefix(1);
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
      if (ec != std::errc() || ptr != f.data() + f.size() || f.empty()) {
        fail(ErrorCode::ParseError, at_line(line_no) + "column " + std::to_string(j + 1) +
                                        ": not a number '" + std::string(fields[j]) + "'");
      }
      row[j] = v;
    }
    try {
      data.push_back(row);
    } catch (const Error& e) {
      fail(e.code(), at_line(line_no) + e.what());
    }
  }
  return data;
}

Dataset read_dataset_csv(const std::string& path, CoordinateMode mode) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot open '" + path + "'");
  return read_dataset_csv(in, mode);
}

void write_dataset_csv(std::ostream& out, const Dataset& data) {
  for (std::size_t j = 0; j < data.dim(); ++j) out << (j ? ",x" : "x") << j + 1;
  out << '\n';
  for (std::size_t i = 0; i < data.size(); ++i) {
    auto p = data.point(i);
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (j) out << ',';
      out << format_number(p[j]);
    }
    out << '\n';
  }
}

void write_dataset_csv(const std::string& path, const Dataset& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::IoError, "cannot write '" + path + "'");
  write_dataset_csv(out, data);
  if (!out) fail(ErrorCode::IoError, "write failed for '" + path + "'");
}

std::string format_number(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string format_fixed(double v, int decimals) {
  char buf[512];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, decimals);
  if (ec != std::errc()) return format_number(v);
  return std::string(buf, ptr);
}

}  // namespace kdsky
