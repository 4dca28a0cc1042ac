#include "fracplap/nonlocal_problem.hpp"

#include <algorithm>
#include <cmath>

#include "fracplap/errors.hpp"

namespace fracplap {

namespace {

// |t|^{p-2} t, with the p = 2 case kept exact.
inline double signed_pow(double t, double p) {
  if (p == 2.0) return t;
  if (t == 0.0) return 0.0;
  return std::copysign(std::pow(std::abs(t), p - 1.0), t);
}

inline double abs_pow(double t, double p) {
  if (p == 2.0) return t * t;
  return std::pow(std::abs(t), p);
}

}  // namespace

NonlocalProblem::NonlocalProblem(Grid grid, ExponentField field, double s)
    : grid_(std::move(grid)), field_(std::move(field)), s_(s) {
  if (!(s > 0.0 && s < 1.0)) throw ArgumentError("s must lie in (0, 1)", "solve.s");
  if (!(field_.p_min() > 1.0)) throw ArgumentError("exponent lower bound must exceed 1", "field");
  constant_p_ = field_.is_constant();
  const int n = grid_.dim();
  const auto interior = grid_.interior();
  slot_.assign(grid_.size(), -1);
  for (std::size_t k = 0; k < interior.size(); ++k) slot_[interior[k]] = static_cast<std::int64_t>(k);

  // Lattice offsets within the horizon, shared by every interior row.
  const auto& h = grid_.spacing();
  const auto& shape = grid_.shape();
  const auto& K = grid_.collar_cells();
  struct Offset {
    int d0, d1;
    double dist;
  };
  std::vector<Offset> offsets;
  const double horizon = grid_.horizon() * (1.0 + 1e-12);
  for (int d1 = (n == 2 ? -K[1] : 0); d1 <= (n == 2 ? K[1] : 0); ++d1) {
    for (int d0 = -K[0]; d0 <= K[0]; ++d0) {
      if (d0 == 0 && d1 == 0) continue;
      const double dist = n == 1 ? std::abs(d0 * h[0]) : std::hypot(d0 * h[0], d1 * h[1]);
      if (dist <= horizon) offsets.push_back({d0, d1, dist});
    }
  }

  const double m = grid_.cell_measure();
  row_start_.reserve(interior.size() + 1);
  entries_.reserve(interior.size() * offsets.size());
  for (std::size_t i : interior) {
    row_start_.push_back(entries_.size());
    const long c0 = static_cast<long>(i % shape[0]);
    const long c1 = static_cast<long>(i / shape[0]);
    for (const auto& o : offsets) {
      const std::size_t j = static_cast<std::size_t>((c1 + o.d1) * shape[0] + (c0 + o.d0));
      const double p = field_(grid_.node(i), grid_.node(j));
      const double w = m / std::pow(o.dist, n + s_ * p);
      entries_.push_back({static_cast<std::uint32_t>(j), grid_.is_interior(j), p, w});
    }
  }
  row_start_.push_back(entries_.size());
}

void NonlocalProblem::require_size(const GridFunction& u) const {
  if (u.size() != grid_.size())
    throw ArgumentError("grid function has " + std::to_string(u.size()) + " values, grid has " +
                            std::to_string(grid_.size()),
                        "u");
}

double NonlocalProblem::energy(const GridFunction& u) const {
  require_size(u);
  const auto interior = grid_.interior();
  const double m = grid_.cell_measure();
  double total = 0.0;
  for (std::size_t k = 0; k < interior.size(); ++k) {
    const double ui = u[interior[k]];
    double row = 0.0;
    for (std::size_t e = row_start_[k]; e < row_start_[k + 1]; ++e) {
      const Entry& en = entries_[e];
      const double v = en.weight * abs_pow(ui - u[en.col], en.p) / en.p;
      row += en.interior ? v : 2.0 * v;
    }
    total += m * row;
  }
  return total;
}

double NonlocalProblem::operator_apply(const GridFunction& u, std::size_t node) const {
  require_size(u);
  if (node >= grid_.size() || slot_[node] < 0)
    throw ArgumentError("operator is only defined at interior nodes", "node");
  const std::size_t k = static_cast<std::size_t>(slot_[node]);
  const double ui = u[node];
  double acc = 0.0;
  for (std::size_t e = row_start_[k]; e < row_start_[k + 1]; ++e) {
    const Entry& en = entries_[e];
    acc += en.weight * signed_pow(ui - u[en.col], en.p);
  }
  return acc;
}

std::vector<double> NonlocalProblem::operator_interior(const GridFunction& u) const {
  require_size(u);
  const auto interior = grid_.interior();
  std::vector<double> out(interior.size());
  for (std::size_t k = 0; k < interior.size(); ++k) {
    const double ui = u[interior[k]];
    double acc = 0.0;
    if (constant_p_ && field_.p_min() == 2.0) {
      for (std::size_t e = row_start_[k]; e < row_start_[k + 1]; ++e)
        acc += entries_[e].weight * (ui - u[entries_[e].col]);
    } else {
      for (std::size_t e = row_start_[k]; e < row_start_[k + 1]; ++e) {
        const Entry& en = entries_[e];
        acc += en.weight * signed_pow(ui - u[en.col], en.p);
      }
    }
    out[k] = acc;
  }
  return out;
}

GridFunction NonlocalProblem::gradient(const GridFunction& u) const {
  const auto a = operator_interior(u);
  const auto interior = grid_.interior();
  const double m = grid_.cell_measure();
  GridFunction g(grid_.size(), 0.0);
  for (std::size_t k = 0; k < interior.size(); ++k) g[interior[k]] = 2.0 * m * a[k];
  return g;
}

double NonlocalProblem::weak_residual(const GridFunction& u, const GridFunction& phi) const {
  require_size(u);
  require_size(phi);
  for (std::size_t j : grid_.exterior())
    if (phi[j] != 0.0) throw ArgumentError("test function must vanish outside the domain", "phi");
  const auto interior = grid_.interior();
  const double m = grid_.cell_measure();
  double total = 0.0;
  for (std::size_t k = 0; k < interior.size(); ++k) {
    const std::size_t i = interior[k];
    for (std::size_t e = row_start_[k]; e < row_start_[k + 1]; ++e) {
      const Entry& en = entries_[e];
      if (en.interior && en.col < i) continue;  // each interior pair once
      const double dphi = phi[i] - phi[en.col];
      if (dphi == 0.0) continue;
      total += 2.0 * m * en.weight * signed_pow(u[i] - u[en.col], en.p) * dphi;
    }
  }
  return total;
}

GridFunction NonlocalProblem::exterior_average(const GridFunction& g) const {
  require_size(g);
  GridFunction u = g;
  double all = 0.0;
  for (std::size_t j : grid_.exterior()) all += g[j];
  all /= static_cast<double>(std::max<std::size_t>(1, grid_.exterior().size()));
  const auto interior = grid_.interior();
  for (std::size_t k = 0; k < interior.size(); ++k) {
    double num = 0.0, den = 0.0;
    for (std::size_t e = row_start_[k]; e < row_start_[k + 1]; ++e) {
      const Entry& en = entries_[e];
      if (en.interior) continue;
      num += en.weight * g[en.col];
      den += en.weight;
    }
    u[interior[k]] = den > 0.0 ? num / den : all;
  }
  return u;
}

double NonlocalProblem::residual_norm(const GridFunction& u) const {
  const auto a = operator_interior(u);
  const double m = grid_.cell_measure();
  double r = 0.0;
  for (double v : a) r = std::max(r, std::abs(m * v));
  return r;
}

TailResult NonlocalProblem::tail(const GridFunction& u, const Point& x0, double R, TailSign sign,
                                 const TailOptions& opts) const {
  require_size(u);
  if (!(R > 0.0)) throw ArgumentError("tail radius must be positive", "R");
  if (!grid_.open_ball_in_omega(x0, R))
    throw GeometryError("tail ball must lie inside the domain", "R");
  const double reach = grid_.box_reach(x0);
  TailResult res;
  res.r_outer = opts.r_outer.value_or(reach);
  if (!(res.r_outer > R) || res.r_outer > reach * (1.0 + 1e-12))
    throw GeometryError("outer tail radius must lie between R and the box reach", "r_outer");

  auto part = [sign](double v) {
    switch (sign) {
      case TailSign::plus: return std::max(v, 0.0);
      case TailSign::minus: return std::max(-v, 0.0);
      case TailSign::abs: return std::abs(v);
    }
    return 0.0;
  };

  const int n = grid_.dim();
  struct Term {
    std::size_t node;
    double mass;  // m_y * frac_y
    double base;  // u_sign(y)
    double dist;  // |y - x0|
  };
  std::vector<Term> terms;
  const double m = grid_.cell_measure();
  for (std::size_t j = 0; j < grid_.size(); ++j) {
    const double frac = grid_.cell_fraction_in_annulus(j, x0, R, res.r_outer);
    if (frac <= 0.0) continue;
    const double b = part(u[j]);
    if (b == 0.0) continue;
    terms.push_back({j, m * frac, b, distance(grid_.node(j), x0)});
  }

  const auto ball = grid_.ball(x0, R, BallKind::open);
  if (ball.empty()) throw GeometryError("tail ball contains no grid nodes", "R");
  res.value = 0.0;
  res.argmax = ball.front();
  const bool x_free = constant_p_;
  for (std::size_t i : ball) {
    double acc = 0.0;
    for (const auto& t : terms) {
      const double p = field_(grid_.node(i), grid_.node(t.node));
      acc += t.mass * std::pow(t.base, p - 1.0) / std::pow(t.dist, n + s_ * p);
    }
    if (acc > res.value) {
      res.value = acc;
      res.argmax = i;
    }
    if (x_free) break;
  }

  double env = 0.0;
  for (std::size_t j : grid_.exterior()) env = std::max(env, part(u[j]));
  res.envelope = opts.envelope.value_or(env);
  const double pl = field_.p_min(), pu = field_.p_max();
  const double M = res.envelope;
  const double mpow = M > 0.0 ? std::max(std::pow(M, pu - 1.0), std::pow(M, pl - 1.0)) : 0.0;
  const double rho = res.r_outer;
  res.remainder = unit_sphere_area(n) / (s_ * pl) * mpow *
                  std::max(std::pow(rho, -s_ * pl), std::pow(rho, -s_ * pu));
  return res;
}

GridFunction truncate_level(const GridFunction& u, double k, TailSign sign) {
  GridFunction w(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double d = u[i] - k;
    switch (sign) {
      case TailSign::plus: w[i] = std::max(d, 0.0); break;
      case TailSign::minus: w[i] = std::max(-d, 0.0); break;
      case TailSign::abs: w[i] = std::abs(d); break;
    }
  }
  return w;
}

}  // namespace fracplap
