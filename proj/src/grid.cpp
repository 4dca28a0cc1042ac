#include "fracplap/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fracplap/errors.hpp"

namespace fracplap {

namespace {

constexpr double kRel = 1e-12;

double interval_overlap(double a0, double a1, double b0, double b1) {
  return std::max(0.0, std::min(a1, b1) - std::max(a0, b0));
}

}  // namespace

Grid Grid::build(const GridSpec& spec) {
  if (spec.dim != 1 && spec.dim != 2)
    throw ArgumentError("dimension must be 1 or 2", "grid.dim");
  if (spec.nodes < 9 || spec.nodes % 2 == 0)
    throw ArgumentError("nodes per axis must be odd and at least 9, got " +
                            std::to_string(spec.nodes),
                        "grid.nodes");
  double circumradius = 0.0;
  for (int k = 0; k < spec.dim; ++k) {
    if (!(spec.half_width[k] > 0.0) || !std::isfinite(spec.half_width[k]))
      throw ArgumentError("domain half-width must be positive", "grid.half_width");
    circumradius = std::hypot(circumradius, spec.half_width[k]);
  }
  if (!(spec.r_trunc > circumradius) || !std::isfinite(spec.r_trunc))
    throw ArgumentError("truncation radius must exceed the domain circumradius",
                        "grid.r_trunc");

  Grid g;
  g.spec_ = spec;
  const int half = (spec.nodes - 1) / 2;
  g.measure_ = 1.0;
  g.horizon_ = INFINITY;
  for (int k = 0; k < 2; ++k) {
    if (k >= spec.dim) {
      g.h_[k] = 1.0;
      g.shape_[k] = 1;
      g.collar_[k] = 0;
      continue;
    }
    const double a = spec.half_width[k];
    const double h = 2.0 * a / spec.nodes;
    const int K = static_cast<int>(std::floor((spec.r_trunc - a) / h + 1e-9));
    if (K < 1)
      throw ArgumentError("truncation radius leaves no exterior collar", "grid.r_trunc");
    g.h_[k] = h;
    g.collar_[k] = K;
    g.shape_[k] = spec.nodes + 2 * K;
    g.measure_ *= h;
    g.horizon_ = std::min(g.horizon_, K * h);
  }

  const std::size_t total = static_cast<std::size_t>(g.shape_[0]) * g.shape_[1];
  g.nodes_.reserve(total);
  g.lattice_.reserve(total);
  g.interior_mask_.reserve(total);
  const int lo0 = -(half + g.collar_[0]);
  const int lo1 = spec.dim == 2 ? -(half + g.collar_[1]) : 0;
  for (int j1 = 0; j1 < g.shape_[1]; ++j1) {
    for (int j0 = 0; j0 < g.shape_[0]; ++j0) {
      const int k0 = lo0 + j0;
      const int k1 = lo1 + j1;
      Point x{spec.center[0] + k0 * g.h_[0], spec.dim == 2 ? spec.center[1] + k1 * g.h_[1] : 0.0};
      const bool inside = std::abs(k0) <= half && (spec.dim == 1 || std::abs(k1) <= half);
      const std::size_t idx = g.nodes_.size();
      g.nodes_.push_back(x);
      g.lattice_.push_back({k0, k1});
      g.interior_mask_.push_back(inside ? 1 : 0);
      (inside ? g.interior_ : g.exterior_).push_back(idx);
    }
  }
  return g;
}

double Grid::min_spacing() const noexcept {
  return spec_.dim == 1 ? h_[0] : std::min(h_[0], h_[1]);
}

double Grid::distance(std::size_t i, std::size_t j) const {
  const double d0 = (lattice_[i][0] - lattice_[j][0]) * h_[0];
  if (spec_.dim == 1) return std::abs(d0);
  const double d1 = (lattice_[i][1] - lattice_[j][1]) * h_[1];
  return std::hypot(d0, d1);
}

bool Grid::interacts(std::size_t i, std::size_t j) const {
  return i != j && distance(i, j) <= horizon_ * (1.0 + kRel);
}

double Grid::omega_measure() const noexcept {
  double m = 0.0;
  for (std::size_t i = 0; i < interior_.size(); ++i) m += measure_;
  return m;
}

bool Grid::in_omega(const Point& x) const noexcept {
  for (int k = 0; k < spec_.dim; ++k)
    if (!(std::abs(x[k] - spec_.center[k]) < spec_.half_width[k])) return false;
  return true;
}

bool Grid::closed_ball_in_omega(const Point& x0, double R) const noexcept {
  for (int k = 0; k < spec_.dim; ++k)
    if (!(std::abs(x0[k] - spec_.center[k]) + R < spec_.half_width[k])) return false;
  return R >= 0.0;
}

bool Grid::open_ball_in_omega(const Point& x0, double R) const noexcept {
  for (int k = 0; k < spec_.dim; ++k)
    if (!(std::abs(x0[k] - spec_.center[k]) + R <= spec_.half_width[k] * (1.0 + kRel)))
      return false;
  return R >= 0.0;
}

double Grid::box_reach(const Point& x0) const noexcept {
  const int half = (spec_.nodes - 1) / 2;
  double reach = INFINITY;
  for (int k = 0; k < spec_.dim; ++k) {
    const double edge = (half + collar_[k] + 0.5) * h_[k];
    reach = std::min(reach, edge - std::abs(x0[k] - spec_.center[k]));
  }
  return std::max(reach, 0.0);
}

std::vector<std::size_t> Grid::ball(const Point& x0, double R, BallKind kind) const {
  std::vector<std::size_t> out;
  const double cut = kind == BallKind::open ? R * (1.0 - kRel) : R * (1.0 + kRel);
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const double d = fracplap::distance(nodes_[i], x0);
    if (kind == BallKind::open ? d < cut : d <= cut) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> Grid::outside_ball(const Point& x0, double R) const {
  std::vector<std::size_t> out;
  const double cut = R * (1.0 - kRel);
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if (!(fracplap::distance(nodes_[i], x0) < cut)) out.push_back(i);
  return out;
}

double Grid::cell_diameter(std::span<const std::size_t> region) const {
  if (region.empty()) return 0.0;
  if (spec_.dim == 1) {
    auto [lo, hi] = std::minmax_element(region.begin(), region.end(), [&](auto a, auto b) {
      return lattice_[a][0] < lattice_[b][0];
    });
    return (lattice_[*hi][0] - lattice_[*lo][0] + 1) * h_[0];
  }
  double best = 0.0;
  for (std::size_t a = 0; a < region.size(); ++a) {
    for (std::size_t b = a; b < region.size(); ++b) {
      const int d0 = std::abs(lattice_[region[a]][0] - lattice_[region[b]][0]) + 1;
      const int d1 = std::abs(lattice_[region[a]][1] - lattice_[region[b]][1]) + 1;
      best = std::max(best, std::hypot(d0 * h_[0], d1 * h_[1]));
    }
  }
  return best;
}

double Grid::cell_fraction_in_annulus(std::size_t i, const Point& x0, double r_in,
                                      double r_out) const {
  if (!(r_out > r_in)) return 0.0;
  const Point& y = nodes_[i];
  if (spec_.dim == 1) {
    const double a = y[0] - 0.5 * h_[0];
    const double b = y[0] + 0.5 * h_[0];
    const double len = interval_overlap(a, b, x0[0] + r_in, x0[0] + r_out) +
                       interval_overlap(a, b, x0[0] - r_out, x0[0] - r_in);
    return len / h_[0];
  }
  const double dc = fracplap::distance(y, x0);
  const double half_diag = 0.5 * std::hypot(h_[0], h_[1]);
  if (dc + half_diag <= r_in || dc - half_diag >= r_out) return 0.0;
  if (dc - half_diag >= r_in && dc + half_diag <= r_out) return 1.0;
  constexpr int S = 16;
  int hits = 0;
  for (int a = 0; a < S; ++a) {
    for (int b = 0; b < S; ++b) {
      const Point z{y[0] + ((a + 0.5) / S - 0.5) * h_[0], y[1] + ((b + 0.5) / S - 0.5) * h_[1]};
      const double d = fracplap::distance(z, x0);
      if (d >= r_in && d <= r_out) ++hits;
    }
  }
  return static_cast<double>(hits) / (S * S);
}

}  // namespace fracplap
