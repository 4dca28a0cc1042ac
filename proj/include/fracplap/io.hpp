#pragma once

#include <string>
#include <vector>

#include "fracplap/grid.hpp"

namespace fracplap {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

/// Round-trip decimal: 17 significant digits.
std::string format_double(double v);

CsvTable read_csv(const std::string& path);
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

/// Writes `x[,y],u`, one row per node in node order.
void write_grid_function(const std::string& path, const Grid& grid, const GridFunction& u);

/// Reads `x[,y],u`. Rows must match the grid's nodes in order (coordinates
/// within 1e-9 of the node positions).
GridFunction read_grid_function(const std::string& path, const Grid& grid);

}  // namespace fracplap
