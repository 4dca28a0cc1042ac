#pragma once

#include <cstdint>
#include <string>

#include "fracplap/grid.hpp"

namespace fracplap {

enum class ExteriorKind { constant, linear, sign, random, csv };

const char* to_string(ExteriorKind kind) noexcept;

struct ExteriorSpec {
  ExteriorKind kind = ExteriorKind::constant;
  double value = 0.0;      // constant level; offset for linear and random
  double slope = 1.0;      // linear: g = value + slope * x_1
  double amplitude = 1.0;  // sign and random
  int modes = 4;           // random: number of Fourier modes
  std::uint64_t seed = 0;  // random
  std::string path;        // csv: `x[,y],u` over all grid nodes
};

/// Exterior data evaluated at every node (the interior values serve only as a
/// starting point). The random kind is a smooth trigonometric sum whose
/// coefficients depend on the seed alone, so refining the mesh samples the
/// same function.
GridFunction make_exterior(const Grid& grid, const ExteriorSpec& spec);

}  // namespace fracplap
