#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fracplap/geometry.hpp"

namespace fracplap {

class Grid;
struct GridSpec;

enum class ExponentKind { constant, remark_i, remark_ii, affine, tabulated, custom };

const char* to_string(ExponentKind kind) noexcept;

/// Bilinearly interpolated table p(x, y) on a tensor grid of scalar x and y.
struct ExponentTable {
  std::vector<double> xs;      // strictly increasing
  std::vector<double> ys;      // strictly increasing
  std::vector<double> values;  // values[iy * xs.size() + ix]
};

/// Modulus used by the remark_i preset: increasing, bounded by 1, omega(0) = 0,
/// and omega(r) * log(1/r) -> infinity as r -> 0.
double remark_i_modulus(double r) noexcept;

/// Radial profile of the remark_ii preset, omega(0) = 3.
double remark_ii_profile(double r) noexcept;

/// Symmetric variable exponent p(x, y) with global bounds p_min <= p <= p_max.
///
/// Every preset evaluates symmetrically by construction, so
/// `field(x, y) == field(y, x)` holds bit for bit.
class ExponentField {
 public:
  using Callable = std::function<double(const Point&, const Point&)>;

  static ExponentField constant(double p);
  static ExponentField remark_i();
  static ExponentField remark_ii();
  /// p(x, y) = base + slope * (x_1 + y_1) / 2, clamped to [p_min, p_max].
  static ExponentField affine(double base, double slope, double p_min, double p_max);
  static ExponentField tabulated(ExponentTable table);
  /// Reads `x,y,p` triples.
  static ExponentField from_csv(const std::string& path);
  /// Wraps an arbitrary callable. The result is evaluated as (f(x,y)+f(y,x))/2.
  static ExponentField custom(std::string name, Callable fn, double p_min, double p_max);

  double operator()(const Point& x, const Point& y) const;
  double diagonal(const Point& x) const { return (*this)(x, x); }

  ExponentKind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }
  double p_min() const noexcept { return p_min_; }
  double p_max() const noexcept { return p_max_; }
  bool is_constant() const noexcept { return kind_ == ExponentKind::constant; }
  /// True when p depends on |x - y| only.
  bool is_radial() const noexcept {
    return kind_ == ExponentKind::constant || kind_ == ExponentKind::remark_ii;
  }
  /// Only meaningful for radial fields.
  double radial_profile(double r) const;

  /// Preset parameters, for reporting.
  double param(std::size_t i) const { return i < params_.size() ? params_[i] : 0.0; }

 private:
  ExponentField(ExponentKind kind, std::string name, double p_min, double p_max)
      : kind_(kind), name_(std::move(name)), p_min_(p_min), p_max_(p_max) {}

  double table_eval(double x, double y) const;

  ExponentKind kind_;
  std::string name_;
  double p_min_;
  double p_max_;
  std::vector<double> params_;
  std::shared_ptr<const ExponentTable> table_;
  std::shared_ptr<const Callable> fn_;
};

/// Declarative field description, as read from a configuration file.
struct FieldSpec {
  ExponentKind kind = ExponentKind::constant;
  double p = 2.0;  // constant
  double base = 2.0;  // affine
  double slope = 0.0;
  double p_min = 1.5;
  double p_max = 3.0;
  std::string path;  // tabulated
};

/// Custom fields cannot be described declaratively and are rejected.
ExponentField make_field(const FieldSpec& spec);

/// Extrema of p over a product of node sets, with the attaining pairs.
struct ProductExtrema {
  double p_minus;
  double p_plus;
  std::size_t argmin_a, argmin_b;  // indices into A and B
  std::size_t argmax_a, argmax_b;
};

/// p_-(A x B) and p_+(A x B) over the given points. Diagonal pairs (x, x) are
/// included whenever a point appears in both sets.
ProductExtrema extrema_over_product(const ExponentField& field, std::span<const Point> a,
                                    std::span<const Point> b);

enum class Condition { P1, P2, log_holder };

const char* to_string(Condition c) noexcept;

struct Witness {
  Point center{};
  double radius = 0.0;  // ball radius, or the scale for log_holder
  double value = 0.0;   // measured quantity at the witness
};

struct ConditionReport {
  Condition condition = Condition::P1;
  bool pass = false;
  Witness witness;
  /// P1 only: largest R^{p_- - p_+} over the sampled balls at the finest level.
  double L_est = 0.0;
  /// P1: L_est per refinement level. log_holder: measure per scale.
  std::vector<double> per_level;
  /// P1: grid spacing per level. log_holder: the scales (descending).
  std::vector<double> levels;
};

/// R^{p_-(BxB) - p_+(BxB)} over all sampled balls, at `refinements` successive
/// mesh refinements (nodes -> 2 nodes + 1). Passes when L_est is finite and
/// grows by at most a factor 2 between successive levels.
ConditionReport check_P1(const ExponentField& field, const GridSpec& spec,
                         std::span<const double> radii, std::span<const Point> centers,
                         int refinements = 2);

/// p_+(B x B^c) <= p_+(B x B) and p_-(B x B^c) <= p_-(B x B) on every sampled
/// ball, with B^c sampled on all grid nodes outside the ball.
ConditionReport check_P2(const ExponentField& field, const Grid& grid,
                         std::span<const double> radii, std::span<const Point> centers,
                         double tol = 1e-12);

/// sup |p(z) - p(z')| * log(1/d) over base points z in Omega x Omega and axis
/// perturbations |z - z'| = d, per scale d. Passes when the measure does not
/// increase (relative tolerance `tol`) as the scale shrinks. The witness is the
/// finest scale at which an increase is observed.
ConditionReport check_log_holder(const ExponentField& field, const Grid& grid,
                                 std::span<const double> scales, double tol = 0.05);

}  // namespace fracplap
