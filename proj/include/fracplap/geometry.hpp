#pragma once

#include <array>
#include <cmath>

namespace fracplap {

/// A point in R^n, n <= 2. Unused trailing coordinates are zero.
using Point = std::array<double, 2>;

inline double distance(const Point& a, const Point& b) noexcept {
  return std::hypot(a[0] - b[0], a[1] - b[1]);
}

inline double norm(const Point& a) noexcept { return std::hypot(a[0], a[1]); }

/// Surface measure of the unit sphere S^{n-1}.
inline double unit_sphere_area(int dim) noexcept {
  return dim == 1 ? 2.0 : 2.0 * 3.14159265358979323846;
}

}  // namespace fracplap
