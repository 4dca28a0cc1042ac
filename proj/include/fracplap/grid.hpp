#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "fracplap/geometry.hpp"

namespace fracplap {

/// Nodal values of a function on a Grid, one entry per node in node order.
using GridFunction = std::vector<double>;

struct GridSpec {
  int dim = 1;
  Point center{0.0, 0.0};
  Point half_width{1.0, 1.0};
  /// Half-width of the computational box; must exceed Omega's circumradius.
  double r_trunc = 4.0;
  /// Cell-centred nodes across Omega per axis; odd, >= 9.
  int nodes = 65;
};

enum class BallKind { open, closed };

/// Uniform tensor grid over a box Omega plus an exterior collar.
///
/// Omega is tiled exactly by `nodes` cells per axis, so the interior cell
/// measures sum to |Omega|. The collar continues the same lattice out to the
/// truncation box. Node i sits at center + k_i * h with integer lattice
/// coordinates k_i, and pairwise distances are computed from lattice offsets so
/// that mirror pairs have bitwise-identical distances.
class Grid {
 public:
  static Grid build(const GridSpec& spec);

  const GridSpec& spec() const noexcept { return spec_; }
  int dim() const noexcept { return spec_.dim; }
  std::size_t size() const noexcept { return nodes_.size(); }

  const Point& node(std::size_t i) const { return nodes_[i]; }
  std::span<const Point> nodes() const noexcept { return nodes_; }
  double measure(std::size_t /*i*/) const { return measure_; }
  double cell_measure() const noexcept { return measure_; }
  bool is_interior(std::size_t i) const { return interior_mask_[i] != 0; }
  std::span<const std::size_t> interior() const noexcept { return interior_; }
  std::span<const std::size_t> exterior() const noexcept { return exterior_; }

  const std::array<double, 2>& spacing() const noexcept { return h_; }
  double min_spacing() const noexcept;
  /// Box nodes per axis.
  const std::array<int, 2>& shape() const noexcept { return shape_; }
  /// Collar cells per side, per axis.
  const std::array<int, 2>& collar_cells() const noexcept { return collar_; }
  /// Interaction radius: every interior node has a full, point-symmetric
  /// neighbourhood of this radius inside the box.
  double horizon() const noexcept { return horizon_; }

  /// Euclidean distance from lattice offsets; exactly symmetric.
  double distance(std::size_t i, std::size_t j) const;
  bool interacts(std::size_t i, std::size_t j) const;

  /// Sum of interior cell measures.
  double omega_measure() const noexcept;

  /// True when x lies in the open box Omega.
  bool in_omega(const Point& x) const noexcept;
  /// True when the closed ball of radius R about x0 lies in the open box Omega.
  bool closed_ball_in_omega(const Point& x0, double R) const noexcept;
  /// True when the open ball lies in Omega (the ball may touch the boundary).
  bool open_ball_in_omega(const Point& x0, double R) const noexcept;
  /// Largest radius whose ball about x0 stays inside the computational box.
  double box_reach(const Point& x0) const noexcept;

  /// Node indices within the ball. Closed balls include nodes within a
  /// relative 1e-12 of the sphere; open balls exclude them.
  std::vector<std::size_t> ball(const Point& x0, double R, BallKind kind = BallKind::open) const;
  /// Complement of `ball(x0, R, open)` over all grid nodes.
  std::vector<std::size_t> outside_ball(const Point& x0, double R) const;
  double region_measure(std::span<const std::size_t> region) const noexcept {
    return measure_ * static_cast<double>(region.size());
  }
  /// Diameter of the union of the region's cells.
  double cell_diameter(std::span<const std::size_t> region) const;

  /// Fraction of node i's cell lying in the annulus r_in <= |x - x0| <= r_out.
  /// Exact in 1D, 16x16 midpoint sampling in 2D.
  double cell_fraction_in_annulus(std::size_t i, const Point& x0, double r_in,
                                  double r_out) const;

 private:
  GridSpec spec_;
  std::array<double, 2> h_{1.0, 1.0};
  std::array<int, 2> shape_{1, 1};
  std::array<int, 2> collar_{0, 0};
  double measure_ = 0.0;
  double horizon_ = 0.0;
  std::vector<Point> nodes_;
  std::vector<std::array<int, 2>> lattice_;
  std::vector<char> interior_mask_;
  std::vector<std::size_t> interior_;
  std::vector<std::size_t> exterior_;
};

}  // namespace fracplap
