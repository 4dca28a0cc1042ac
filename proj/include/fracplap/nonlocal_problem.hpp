#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fracplap/exponent_field.hpp"
#include "fracplap/grid.hpp"

namespace fracplap {

enum class TailSign { plus, minus, abs };

struct TailResult {
  double value = 0.0;
  /// Node in B_R(x0) attaining the supremum.
  std::size_t argmax = 0;
  /// Outer radius of the summed annulus.
  double r_outer = 0.0;
  /// Bound on the dropped part beyond r_outer for |u| <= envelope there.
  double remainder = 0.0;
  double envelope = 0.0;
};

struct TailOptions {
  /// Defaults to the largest ball about x0 that stays in the box.
  std::optional<double> r_outer;
  /// Bound on |u| beyond r_outer. Defaults to max |u| over the exterior collar.
  std::optional<double> envelope;
};

/// Discretised energy and operator for fixed (grid, exponent, s).
///
/// Each interior node i stores its interaction row: every node j != i with
/// |x_i - x_j| <= horizon, together with p_ij and the kernel weight
/// m_j / |x_i - x_j|^{n + s p_ij}. Exterior-exterior pairs never appear.
class NonlocalProblem {
 public:
  NonlocalProblem(Grid grid, ExponentField field, double s);

  const Grid& grid() const noexcept { return grid_; }
  const ExponentField& field() const noexcept { return field_; }
  double s() const noexcept { return s_; }
  std::size_t pair_count() const noexcept { return entries_.size(); }

  /// F_h(u): pairs with at least one interior node, each unordered pair once
  /// with weight 2 m_i m_j |u_i - u_j|^p / (p |x_i - x_j|^{n+sp}).
  double energy(const GridFunction& u) const;

  /// Sum_j m_j |u_i - u_j|^{p-2} (u_i - u_j) / |x_i - x_j|^{n+sp} at interior node i.
  double operator_apply(const GridFunction& u, std::size_t node) const;
  /// operator_apply at every interior node, in grid.interior() order.
  std::vector<double> operator_interior(const GridFunction& u) const;

  /// dF_h/du on interior nodes (2 m_i times the operator), zero elsewhere.
  GridFunction gradient(const GridFunction& u) const;

  /// Pairing E(u, phi) summed pair by pair. phi must vanish off Omega.
  double weak_residual(const GridFunction& u, const GridFunction& phi) const;

  /// Interior values replaced by the kernel-weighted mean of the exterior
  /// values each row sees; exterior values kept.
  GridFunction exterior_average(const GridFunction& g) const;

  /// max_i |m_i (operator at i)| over interior nodes.
  double residual_norm(const GridFunction& u) const;

  /// sup over nodes x in B_R(x0) of sum_y m_y frac_y u_sign(y)^{p(x,y)-1} /
  /// |y - x0|^{n+s p(x,y)}, where frac_y is the part of y's cell in the
  /// annulus R <= |y - x0| <= r_outer.
  TailResult tail(const GridFunction& u, const Point& x0, double R, TailSign sign,
                  const TailOptions& opts = {}) const;

 private:
  struct Entry {
    std::uint32_t col;
    bool interior;
    double p;
    double weight;
  };

  void require_size(const GridFunction& u) const;

  Grid grid_;
  ExponentField field_;
  double s_;
  bool constant_p_;
  std::vector<std::size_t> row_start_;  // per interior slot, into entries_
  std::vector<Entry> entries_;
  std::vector<std::int64_t> slot_;  // node -> interior slot or -1
};

/// Nodal (u - k)_+, (u - k)_- or |u - k|.
GridFunction truncate_level(const GridFunction& u, double k, TailSign sign);

}  // namespace fracplap
