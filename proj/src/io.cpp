#include "fracplap/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "fracplap/errors.hpp"

namespace fracplap {

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    const auto b = cell.find_first_not_of(" \t\r");
    const auto e = cell.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? std::string() : cell.substr(b, e - b + 1));
  }
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path, path);
  CsvTable t;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto cells = split(line);
    if (t.header.empty()) {
      t.header = std::move(cells);
      continue;
    }
    if (cells.size() != t.header.size())
      throw IoError(path + ":" + std::to_string(lineno) + ": expected " +
                        std::to_string(t.header.size()) + " columns",
                    path);
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& c : cells) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(c, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != c.size() || !std::isfinite(v))
        throw IoError(path + ":" + std::to_string(lineno) + ": not a finite number: '" + c + "'",
                      path);
      row.push_back(v);
    }
    t.rows.push_back(std::move(row));
  }
  if (t.header.empty()) throw IoError(path + ": empty file", path);
  return t;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path, path);
  for (std::size_t k = 0; k < header.size(); ++k) out << (k ? "," : "") << header[k];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t k = 0; k < row.size(); ++k) out << (k ? "," : "") << format_double(row[k]);
    out << '\n';
  }
  if (!out) throw IoError("write failed: " + path, path);
}

void write_grid_function(const std::string& path, const Grid& grid, const GridFunction& u) {
  if (u.size() != grid.size()) throw ArgumentError("grid function size mismatch", "u");
  std::vector<std::string> header = grid.dim() == 1 ? std::vector<std::string>{"x", "u"}
                                                    : std::vector<std::string>{"x", "y", "u"};
  std::vector<std::vector<double>> rows;
  rows.reserve(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    const Point& x = grid.node(i);
    if (grid.dim() == 1)
      rows.push_back({x[0], u[i]});
    else
      rows.push_back({x[0], x[1], u[i]});
  }
  write_csv(path, header, rows);
}

GridFunction read_grid_function(const std::string& path, const Grid& grid) {
  const CsvTable t = read_csv(path);
  const std::size_t cols = grid.dim() + 1;
  const std::vector<std::string> want = grid.dim() == 1 ? std::vector<std::string>{"x", "u"}
                                                        : std::vector<std::string>{"x", "y", "u"};
  if (t.header != want)
    throw IoError(path + ": header must be " + (grid.dim() == 1 ? "x,u" : "x,y,u"), path);
  if (t.rows.size() != grid.size())
    throw IoError(path + ": expected " + std::to_string(grid.size()) + " rows, found " +
                      std::to_string(t.rows.size()),
                  path);
  GridFunction u(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto& row = t.rows[i];
    for (int k = 0; k < grid.dim(); ++k)
      if (std::abs(row[k] - grid.node(i)[k]) > 1e-9 * (1.0 + std::abs(grid.node(i)[k])))
        throw IoError(path + ": row " + std::to_string(i + 1) + " does not match node position",
                      path);
    u[i] = row[cols - 1];
  }
  return u;
}

}  // namespace fracplap
