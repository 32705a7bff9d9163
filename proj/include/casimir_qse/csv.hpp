#pragma once

/** @file csv.hpp
    @brief Minimal CSV writing and reading. Lines starting with '#' are comments
           carrying units and provenance; the first non-comment line is the header.
 */

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace casimir_qse::csv {

inline std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

class Writer {
public:
  explicit Writer(std::ostream& out) : out_(out) {}

  Writer& comment(const std::string& text) {
    out_ << "# " << text << '\n';
    return *this;
  }

  Writer& header(const std::vector<std::string>& columns) {
    columns_ = columns.size();
    return row_strings(columns);
  }

  Writer& row(const std::vector<double>& values) {
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (double v : values) cells.push_back(format_number(v));
    return row_strings(cells);
  }

  Writer& row_strings(const std::vector<std::string>& cells) {
    if (columns_ != 0 && cells.size() != columns_)
      throw std::invalid_argument("csv: row width does not match header");
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ',';
      out_ << cells[i];
    }
    out_ << '\n';
    return *this;
  }

private:
  std::ostream& out_;
  std::size_t columns_ = 0;
};

struct Table {
  std::vector<std::string> comments;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
      if (columns[i] == name) return i;
    throw std::out_of_range("csv: no column '" + name + "'");
  }

  double number(std::size_t row, const std::string& name) const {
    return std::stod(rows.at(row).at(column(name)));
  }
};

inline std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

/// Reads a table; a file without a header line is read as headerless rows.
inline Table read(std::istream& in, bool has_header = true) {
  Table t;
  std::string line;
  bool header_seen = !has_header;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      t.comments.push_back(line.size() > 2 ? line.substr(2) : std::string{});
      continue;
    }
    auto cells = split(line);
    if (!header_seen) {
      t.columns = std::move(cells);
      header_seen = true;
    } else {
      if (!t.columns.empty() && cells.size() != t.columns.size())
        throw std::runtime_error("csv: ragged row '" + line + "'");
      t.rows.push_back(std::move(cells));
    }
  }
  return t;
}

inline Table read_file(const std::string& path, bool has_header = true) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("csv: cannot open '" + path + "'");
  return read(in, has_header);
}

} // namespace casimir_qse::csv
