// Copyright (c) 2026 epsobol developers.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>

#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace epsobol {

class CsvError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parsed delimiter-separated table: header names plus a dense numeric body.
struct CsvTable {
  std::vector<std::string> columns;
  Eigen::MatrixXd values;  // rows x columns
  std::int64_t dropped_rows = 0;

  Eigen::Index rows() const { return values.rows(); }

  Eigen::Index column_index(const std::string& name) const {
    for (std::size_t j = 0; j < columns.size(); ++j)
      if (columns[j] == name) return static_cast<Eigen::Index>(j);
    return -1;
  }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split(std::string_view line, char delim) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(delim, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

}  // namespace detail

/// Parse a delimiter-separated table with a header row. Cells must be numeric;
/// an empty cell is a missing value and is an error unless drop_missing is
/// set, in which case the whole row is dropped and counted.
inline CsvTable read_csv(std::istream& is, char delimiter = ',',
                         bool drop_missing = false) {
  CsvTable table;
  std::string line;
  if (!std::getline(is, line)) throw CsvError("csv: empty input");
  for (std::string_view name : detail::split(line, delimiter)) {
    name = detail::trim(name);
    if (name.empty()) throw CsvError("csv: empty column name in header");
    table.columns.emplace_back(name);
  }
  const std::size_t width = table.columns.size();

  std::vector<double> body;
  std::vector<double> row(width);
  std::int64_t data_rows = 0;
  std::int64_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;  // ignore blank lines
    const auto cells = detail::split(line, delimiter);
    if (cells.size() != width)
      throw CsvError("csv: line " + std::to_string(line_no) + ": expected " +
                     std::to_string(width) + " fields, got " +
                     std::to_string(cells.size()));
    bool missing = false;
    for (std::size_t j = 0; j < width; ++j) {
      const std::string_view cell = detail::trim(cells[j]);
      if (cell.empty()) {
        missing = true;
        break;
      }
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (ec != std::errc{} || ptr != cell.data() + cell.size())
        throw CsvError("csv: line " + std::to_string(line_no) +
                       ": non-numeric cell '" + std::string(cell) + "'");
      row[j] = v;
    }
    if (missing) {
      if (!drop_missing)
        throw CsvError("csv: line " + std::to_string(line_no) +
                       ": missing value (use --drop-missing to skip rows)");
      ++table.dropped_rows;
      continue;
    }
    body.insert(body.end(), row.begin(), row.end());
    ++data_rows;
  }

  table.values.resize(data_rows, static_cast<Eigen::Index>(width));
  for (std::int64_t i = 0; i < data_rows; ++i)
    for (std::size_t j = 0; j < width; ++j)
      table.values(i, static_cast<Eigen::Index>(j)) =
          body[static_cast<std::size_t>(i) * width + j];
  return table;
}

inline CsvTable read_csv_file(const std::string& path, char delimiter = ',',
                              bool drop_missing = false) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open '" + path + "'");
  return read_csv(is, delimiter, drop_missing);
}

}  // namespace epsobol
