#include "fracplap/exterior_data.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "fracplap/errors.hpp"
#include "fracplap/io.hpp"

namespace fracplap {

const char* to_string(ExteriorKind kind) noexcept {
  switch (kind) {
    case ExteriorKind::constant: return "constant";
    case ExteriorKind::linear: return "linear";
    case ExteriorKind::sign: return "sign";
    case ExteriorKind::random: return "random";
    case ExteriorKind::csv: return "csv";
  }
  return "unknown";
}

GridFunction make_exterior(const Grid& grid, const ExteriorSpec& spec) {
  GridFunction g(grid.size());
  const Point c = grid.spec().center;
  switch (spec.kind) {
    case ExteriorKind::constant:
      std::fill(g.begin(), g.end(), spec.value);
      break;
    case ExteriorKind::linear:
      for (std::size_t i = 0; i < g.size(); ++i)
        g[i] = spec.value + spec.slope * (grid.node(i)[0] - c[0]);
      break;
    case ExteriorKind::sign:
      for (std::size_t i = 0; i < g.size(); ++i) {
        const double x = grid.node(i)[0] - c[0];
        g[i] = spec.value + spec.amplitude * ((x > 0) - (x < 0));
      }
      break;
    case ExteriorKind::random: {
      if (spec.modes < 1) throw ArgumentError("random data needs at least one mode", "exterior.modes");
      std::mt19937_64 rng(spec.seed);
      std::uniform_real_distribution<double> unit(-1.0, 1.0);
      std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
      struct Mode {
        double a, k0, k1, phi;
      };
      std::vector<Mode> modes;
      double total = 0.0;
      const double L = grid.spec().r_trunc;
      for (int k = 1; k <= spec.modes; ++k) {
        const double theta = phase(rng);
        const double a = unit(rng) / k;
        const double freq = std::numbers::pi * k / L;
        modes.push_back({a, freq * std::cos(theta), grid.dim() == 2 ? freq * std::sin(theta) : 0.0,
                         phase(rng)});
        if (grid.dim() == 1) modes.back().k0 = freq;
        total += std::abs(a);
      }
      for (std::size_t i = 0; i < g.size(); ++i) {
        const Point& x = grid.node(i);
        double v = 0.0;
        for (const auto& m : modes)
          v += m.a * std::sin(m.k0 * (x[0] - c[0]) + m.k1 * (x[1] - c[1]) + m.phi);
        g[i] = spec.value + spec.amplitude * v / total;
      }
      break;
    }
    case ExteriorKind::csv:
      g = read_grid_function(spec.path, grid);
      break;
  }
  return g;
}

}  // namespace fracplap
