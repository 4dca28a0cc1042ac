#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fracplap/exponent_field.hpp"
#include "fracplap/exterior_data.hpp"
#include "fracplap/grid.hpp"
#include "fracplap/solver.hpp"

namespace fracplap {

struct DiagnosticsConfig {
  Point x0{0.0, 0.0};
  /// Outer radius for the energy estimate; the inner radius is R * r_ratio.
  double radius = 0.5;
  double r_ratio = 0.5;
  /// Truncation levels; empty means the quartiles of u over B_R.
  std::vector<double> levels;
  double sup_radius = 0.5;
  double sup_C = 1.0;
  double growth_H = 1.0;
  double growth_gamma = 0.5;
  double growth_radius = 0.5;
  /// Zero or negative: level at the median of u over B_R.
  double sublevel_level = 0.0;
  double sublevel_q = 1.0;
  double holder_radius = 0.5;
  int holder_jmax = 3;
  double norm_tol = 1e-10;
  std::vector<double> p_radii{0.1, 0.2, 0.4};
  std::vector<Point> p_centers{Point{0.0, 0.0}};
  int p_refinements = 2;
  std::vector<double> log_scales{0.25, 0.0625, 0.015625, 0.00390625};
};

struct RunConfig {
  std::string config_path;
  std::string out_dir = ".";
  std::string input;  // solution or function CSV for norms / diagnose
  std::uint64_t seed = 0;
  SolveConfig solve;
  DiagnosticsConfig diagnostics;
};

/// Parses the sectioned key=value format. Every problem (unknown section or
/// key, malformed value, range violation) is collected into one ConfigError.
RunConfig parse_config(const std::string& path);
RunConfig parse_config_text(const std::string& text, const std::string& origin = "<string>");

/// Checks all cross-field constraints; throws ConfigError listing each issue.
void validate(const RunConfig& config);

/// Canonical text form: fixed section and key order, numbers with 17
/// significant digits.
std::string serialize(const RunConfig& config);

ExponentKind parse_exponent_kind(const std::string& name);
ExteriorKind parse_exterior_kind(const std::string& name);

}  // namespace fracplap
