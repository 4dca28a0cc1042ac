#include "fracplap/exponent_field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

#include "fracplap/errors.hpp"
#include "fracplap/grid.hpp"
#include "fracplap/io.hpp"

namespace fracplap {

const char* to_string(ExponentKind kind) noexcept {
  switch (kind) {
    case ExponentKind::constant: return "constant";
    case ExponentKind::remark_i: return "remark_i";
    case ExponentKind::remark_ii: return "remark_ii";
    case ExponentKind::affine: return "affine";
    case ExponentKind::tabulated: return "tabulated";
    case ExponentKind::custom: return "custom";
  }
  return "unknown";
}

const char* to_string(Condition c) noexcept {
  switch (c) {
    case Condition::P1: return "P1";
    case Condition::P2: return "P2";
    case Condition::log_holder: return "logHolder";
  }
  return "unknown";
}

double remark_i_modulus(double r) noexcept {
  if (!(r > 0.0)) return 0.0;
  return 1.0 / std::log(std::numbers::e + std::log1p(1.0 / r));
}

double remark_ii_profile(double r) noexcept {
  constexpr double inv_e = 1.0 / std::numbers::e;
  if (!(r > 0.0)) return 3.0;
  if (r < inv_e) return 3.0 - std::min(-1.0 / std::log(r), 1.0);
  return 1.5 + 0.5 * inv_e / r;
}

ExponentField ExponentField::constant(double p) {
  if (!(p > 1.0) || !std::isfinite(p))
    throw ArgumentError("constant exponent must be finite and > 1", "field.p");
  ExponentField f(ExponentKind::constant, "constant", p, p);
  f.params_ = {p};
  return f;
}

ExponentField ExponentField::remark_i() {
  return ExponentField(ExponentKind::remark_i, "remark_i", 1.5, 2.5);
}

ExponentField ExponentField::remark_ii() {
  return ExponentField(ExponentKind::remark_ii, "remark_ii", 1.5, 3.0);
}

ExponentField ExponentField::affine(double base, double slope, double p_min, double p_max) {
  if (!(p_min > 1.0) || !(p_max >= p_min) || !std::isfinite(p_max))
    throw ArgumentError("affine exponent bounds must satisfy 1 < p_min <= p_max < inf",
                        "field.p_min");
  if (!std::isfinite(base) || !std::isfinite(slope))
    throw ArgumentError("affine exponent coefficients must be finite", "field.base");
  ExponentField f(ExponentKind::affine, "affine", p_min, p_max);
  f.params_ = {base, slope};
  return f;
}

ExponentField ExponentField::tabulated(ExponentTable table) {
  const std::size_t nx = table.xs.size(), ny = table.ys.size();
  if (nx < 2 || ny < 2 || table.values.size() != nx * ny)
    throw ArgumentError("exponent table must be a full tensor grid of at least 2x2", "field.path");
  auto increasing = [](const std::vector<double>& v) {
    return std::adjacent_find(v.begin(), v.end(), std::greater_equal<>()) == v.end();
  };
  if (!increasing(table.xs) || !increasing(table.ys))
    throw ArgumentError("exponent table axes must be strictly increasing", "field.path");
  const auto [lo, hi] = std::minmax_element(table.values.begin(), table.values.end());
  if (!(*lo > 1.0) || !std::isfinite(*hi))
    throw ArgumentError("tabulated exponent must be finite and > 1", "field.path");
  ExponentField f(ExponentKind::tabulated, "tabulated", *lo, *hi);
  f.table_ = std::make_shared<const ExponentTable>(std::move(table));
  return f;
}

ExponentField ExponentField::from_csv(const std::string& path) {
  const CsvTable csv = read_csv(path);
  if (csv.header != std::vector<std::string>{"x", "y", "p"})
    throw IoError(path + ": header must be x,y,p", path);
  std::map<double, std::size_t> xi, yi;
  for (const auto& r : csv.rows) {
    xi.emplace(r[0], 0);
    yi.emplace(r[1], 0);
  }
  ExponentTable t;
  for (auto& [x, idx] : xi) {
    idx = t.xs.size();
    t.xs.push_back(x);
  }
  for (auto& [y, idx] : yi) {
    idx = t.ys.size();
    t.ys.push_back(y);
  }
  const double nan = std::numeric_limits<double>::quiet_NaN();
  t.values.assign(t.xs.size() * t.ys.size(), nan);
  for (const auto& r : csv.rows) {
    double& slot = t.values[yi[r[1]] * t.xs.size() + xi[r[0]]];
    if (!std::isnan(slot)) throw IoError(path + ": duplicate (x, y) entry", path);
    slot = r[2];
  }
  if (std::any_of(t.values.begin(), t.values.end(), [](double v) { return std::isnan(v); }))
    throw IoError(path + ": (x, y) entries do not form a full tensor grid", path);
  return tabulated(std::move(t));
}

ExponentField ExponentField::custom(std::string name, Callable fn, double p_min, double p_max) {
  if (!fn) throw ArgumentError("custom exponent needs a callable", "field");
  if (!(p_min > 1.0) || !(p_max >= p_min) || !std::isfinite(p_max))
    throw ArgumentError("custom exponent bounds must satisfy 1 < p_min <= p_max < inf", "field");
  ExponentField f(ExponentKind::custom, std::move(name), p_min, p_max);
  f.fn_ = std::make_shared<const Callable>(std::move(fn));
  return f;
}

ExponentField make_field(const FieldSpec& spec) {
  switch (spec.kind) {
    case ExponentKind::constant: return ExponentField::constant(spec.p);
    case ExponentKind::remark_i: return ExponentField::remark_i();
    case ExponentKind::remark_ii: return ExponentField::remark_ii();
    case ExponentKind::affine:
      return ExponentField::affine(spec.base, spec.slope, spec.p_min, spec.p_max);
    case ExponentKind::tabulated: return ExponentField::from_csv(spec.path);
    case ExponentKind::custom: break;
  }
  throw ArgumentError("custom exponent fields cannot be built from a description", "field.kind");
}

double ExponentField::table_eval(double x, double y) const {
  const auto& t = *table_;
  if (x < t.xs.front() || x > t.xs.back() || y < t.ys.front() || y > t.ys.back())
    throw OutOfDomainError("exponent table queried outside its range");
  auto locate = [](const std::vector<double>& axis, double v) {
    std::size_t k = std::upper_bound(axis.begin(), axis.end(), v) - axis.begin();
    k = std::clamp<std::size_t>(k, 1, axis.size() - 1) - 1;
    return std::pair{k, (v - axis[k]) / (axis[k + 1] - axis[k])};
  };
  const auto [ix, tx] = locate(t.xs, x);
  const auto [iy, ty] = locate(t.ys, y);
  const std::size_t nx = t.xs.size();
  const double v00 = t.values[iy * nx + ix], v10 = t.values[iy * nx + ix + 1];
  const double v01 = t.values[(iy + 1) * nx + ix], v11 = t.values[(iy + 1) * nx + ix + 1];
  return (1 - ty) * ((1 - tx) * v00 + tx * v10) + ty * ((1 - tx) * v01 + tx * v11);
}

double ExponentField::operator()(const Point& x, const Point& y) const {
  switch (kind_) {
    case ExponentKind::constant:
      return p_min_;
    case ExponentKind::remark_i: {
      const double ax = norm(x), ay = norm(y);
      // Sum in a fixed order of the unordered pair so swapping x and y is exact.
      const double a = std::min(ax, 1.0) * remark_i_modulus(ay);
      const double b = std::min(ay, 1.0) * remark_i_modulus(ax);
      return 1.5 + 0.5 * (std::min(a, b) + std::max(a, b));
    }
    case ExponentKind::remark_ii:
      return remark_ii_profile(distance(x, y));
    case ExponentKind::affine: {
      const double v = params_[0] + params_[1] * 0.5 * (x[0] + y[0]);
      return std::clamp(v, p_min_, p_max_);
    }
    case ExponentKind::tabulated: {
      const double a = table_eval(x[0], y[0]);
      const double b = table_eval(y[0], x[0]);
      return 0.5 * (std::min(a, b) + std::max(a, b));
    }
    case ExponentKind::custom: {
      const double a = (*fn_)(x, y);
      const double b = (*fn_)(y, x);
      return std::clamp(0.5 * (std::min(a, b) + std::max(a, b)), p_min_, p_max_);
    }
  }
  return p_min_;
}

double ExponentField::radial_profile(double r) const {
  switch (kind_) {
    case ExponentKind::constant: return p_min_;
    case ExponentKind::remark_ii: return remark_ii_profile(r);
    default: throw ArgumentError("exponent field '" + name_ + "' is not radial", "field");
  }
}

ProductExtrema extrema_over_product(const ExponentField& field, std::span<const Point> a,
                                    std::span<const Point> b) {
  if (a.empty() || b.empty()) throw ArgumentError("extrema over an empty node set", "region");
  ProductExtrema e{INFINITY, -INFINITY, 0, 0, 0, 0};
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      const double p = field(a[i], b[j]);
      if (p < e.p_minus) {
        e.p_minus = p;
        e.argmin_a = i;
        e.argmin_b = j;
      }
      if (p > e.p_plus) {
        e.p_plus = p;
        e.argmax_a = i;
        e.argmax_b = j;
      }
    }
  }
  return e;
}

namespace {

std::vector<Point> gather(const Grid& grid, std::span<const std::size_t> idx) {
  std::vector<Point> pts;
  pts.reserve(idx.size());
  for (auto i : idx) pts.push_back(grid.node(i));
  return pts;
}

std::vector<Point> ball_points(const Grid& grid, const Point& c, double R) {
  if (!grid.closed_ball_in_omega(c, R))
    throw GeometryError("sampled ball is not compactly contained in the domain", "radii");
  const auto idx = grid.ball(c, R, BallKind::open);
  if (idx.empty()) throw GeometryError("sampled ball contains no grid nodes", "radii");
  return gather(grid, idx);
}

// Extrema over B x B including the diagonal pairs (x, x), which carry the
// limit value of p as |x - y| -> 0.
ProductExtrema self_extrema(const ExponentField& field, const std::vector<Point>& pts) {
  return extrema_over_product(field, pts, pts);
}

void require_samples(std::span<const double> radii, std::span<const Point> centers) {
  if (radii.empty() || centers.empty())
    throw ArgumentError("at least one radius and one center are required", "radii");
  for (double r : radii)
    if (!(r > 0.0)) throw ArgumentError("radii must be positive", "radii");
}

}  // namespace

ConditionReport check_P1(const ExponentField& field, const GridSpec& spec,
                         std::span<const double> radii, std::span<const Point> centers,
                         int refinements) {
  require_samples(radii, centers);
  if (refinements < 1) throw ArgumentError("at least one refinement level is required", "levels");
  ConditionReport rep;
  rep.condition = Condition::P1;
  GridSpec level = spec;
  for (int l = 0; l < refinements; ++l) {
    if (l > 0) level.nodes = 2 * level.nodes + 1;
    const Grid grid = Grid::build(level);
    double L = 0.0;
    Witness w;
    for (const Point& c : centers) {
      for (double R : radii) {
        const auto pts = ball_points(grid, c, R);
        const auto e = self_extrema(field, pts);
        const double v = std::pow(R, e.p_minus - e.p_plus);
        if (v > L) {
          L = v;
          w = {c, R, v};
        }
      }
    }
    rep.per_level.push_back(L);
    rep.levels.push_back(grid.min_spacing());
    rep.L_est = L;
    rep.witness = w;
  }
  rep.pass = std::isfinite(rep.L_est);
  for (std::size_t l = 1; l < rep.per_level.size(); ++l)
    if (rep.per_level[l] > 2.0 * rep.per_level[l - 1]) rep.pass = false;
  return rep;
}

ConditionReport check_P2(const ExponentField& field, const Grid& grid,
                         std::span<const double> radii, std::span<const Point> centers,
                         double tol) {
  require_samples(radii, centers);
  ConditionReport rep;
  rep.condition = Condition::P2;
  rep.pass = true;
  double worst = -INFINITY;
  for (const Point& c : centers) {
    for (double R : radii) {
      const auto inside = ball_points(grid, c, R);
      const auto outside = gather(grid, grid.outside_ball(c, R));
      if (outside.empty()) throw GeometryError("ball complement has no grid nodes", "radii");
      const auto bb = self_extrema(field, inside);
      const auto bc = extrema_over_product(field, inside, outside);
      const double excess = std::max(bc.p_plus - bb.p_plus, bc.p_minus - bb.p_minus);
      if (excess > worst) {
        worst = excess;
        rep.witness = {c, R, excess};
      }
      if (excess > tol) rep.pass = false;
    }
  }
  return rep;
}

ConditionReport check_log_holder(const ExponentField& field, const Grid& grid,
                                 std::span<const double> scales, double tol) {
  std::vector<double> d(scales.begin(), scales.end());
  std::sort(d.begin(), d.end(), std::greater<>());
  d.erase(std::unique(d.begin(), d.end()), d.end());
  if (d.size() < 2) throw ArgumentError("at least two distinct scales are required", "scales");
  if (!(d.back() > 0.0) || d.front() > 0.5)
    throw ArgumentError("scales must lie in (0, 1/2]", "scales");

  const int n = grid.dim();
  const GridSpec& spec = grid.spec();
  const int half = (spec.nodes - 1) / 2;
  const int cap = n == 1 ? 64 : 10;
  const int stride = std::max(1, (spec.nodes + cap - 1) / cap);

  // Strided interior nodes, always including the centre node.
  std::vector<Point> base;
  for (auto i : grid.interior()) {
    const Point& x = grid.node(i);
    bool keep = true;
    for (int k = 0; k < n; ++k) {
      const long off = std::lround((x[k] - spec.center[k]) / grid.spacing()[k]) + half;
      if (off % stride != half % stride) keep = false;
    }
    if (keep) base.push_back(x);
  }

  auto in_closure = [&](const Point& x) {
    for (int k = 0; k < n; ++k)
      if (std::abs(x[k] - spec.center[k]) > spec.half_width[k] * (1.0 + 1e-12)) return false;
    return true;
  };

  ConditionReport rep;
  rep.condition = Condition::log_holder;
  rep.levels = d;
  std::vector<Point> where(d.size());
  for (std::size_t s = 0; s < d.size(); ++s) {
    const double logd = std::log(1.0 / d[s]);
    double m = 0.0;
    for (const Point& x : base) {
      for (const Point& y : base) {
        const double p0 = field(x, y);
        for (int axis = 0; axis < 2 * n; ++axis) {
          for (double sign : {-1.0, 1.0}) {
            Point x2 = x, y2 = y;
            (axis < n ? x2[axis] : y2[axis - n]) += sign * d[s];
            if (!in_closure(x2) || !in_closure(y2)) continue;
            const double v = std::abs(field(x2, y2) - p0) * logd;
            if (v > m) {
              m = v;
              where[s] = x;
            }
          }
        }
      }
    }
    rep.per_level.push_back(m);
  }
  rep.pass = true;
  std::size_t wit = d.size() - 1;
  for (std::size_t s = 0; s + 1 < d.size(); ++s) {
    if (rep.per_level[s + 1] > rep.per_level[s] * (1.0 + tol) + 1e-12) {
      wit = s + 1;  // finest scale at which growth is still observed
      rep.pass = false;
    }
  }
  rep.witness = {where[wit], d[wit], rep.per_level[wit]};
  return rep;
}

}  // namespace fracplap
