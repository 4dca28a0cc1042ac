#include "fracplap/vexp_spaces.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "fracplap/errors.hpp"

namespace fracplap {

const char* to_string(ModularKind kind) noexcept {
  switch (kind) {
    case ModularKind::lebesgue: return "lebesgue";
    case ModularKind::gagliardo: return "gagliardo";
    case ModularKind::combined: return "combined";
  }
  return "unknown";
}

namespace {

// sum_k w_k (a_k / lambda)^{p_k}, the shape shared by every modular here.
struct PowerSum {
  std::vector<double> w, a, p;

  void add(double weight, double base, double expo) {
    if (base == 0.0 || weight == 0.0) return;
    w.push_back(weight);
    a.push_back(base);
    p.push_back(expo);
  }
  void append(const PowerSum& o) {
    w.insert(w.end(), o.w.begin(), o.w.end());
    a.insert(a.end(), o.a.begin(), o.a.end());
    p.insert(p.end(), o.p.begin(), o.p.end());
  }
  bool empty() const { return w.empty(); }
  double operator()(double lambda) const {
    double acc = 0.0;
    for (std::size_t k = 0; k < w.size(); ++k) {
      const double t = a[k] / lambda;
      acc += w[k] * (p[k] == 2.0 ? t * t : std::pow(t, p[k]));
    }
    return acc;
  }
};

void require_region(const Grid& grid, Region region, const char* name) {
  if (region.empty()) throw ArgumentError(std::string("region '") + name + "' is empty", name);
  for (auto i : region)
    if (i >= grid.size()) throw ArgumentError("region index outside the grid", name);
}

void require_size(const Grid& grid, const GridFunction& u) {
  if (u.size() != grid.size()) throw ArgumentError("grid function size mismatch", "u");
}

PowerSum lebesgue_terms(const GridFunction& u, std::span<const double> pbar, const Grid& grid,
                        Region region) {
  require_size(grid, u);
  require_region(grid, region, "region");
  if (pbar.size() != grid.size()) throw ArgumentError("exponent size mismatch", "pbar");
  PowerSum ps;
  for (auto i : region) ps.add(grid.measure(i), std::abs(u[i]), pbar[i]);
  return ps;
}

PowerSum gagliardo_terms(const GridFunction& u, const ExponentField& field, double s,
                         const Grid& grid, Region a, Region b) {
  require_size(grid, u);
  require_region(grid, a, "A");
  require_region(grid, b, "B");
  if (!(s > 0.0 && s < 1.0)) throw ArgumentError("s must lie in (0, 1)", "s");
  const int n = grid.dim();
  PowerSum ps;
  for (auto i : a) {
    for (auto j : b) {
      if (i == j) continue;
      const double du = std::abs(u[i] - u[j]);
      if (du == 0.0) continue;
      const double p = field(grid.node(i), grid.node(j));
      const double w = grid.measure(i) * grid.measure(j) / std::pow(grid.distance(i, j), n + s * p);
      ps.add(w, du, p);
    }
  }
  return ps;
}

NormResult luxemburg_scalar(const std::function<double(double)>& rho, double tol) {
  if (!(tol > 0.0)) throw ArgumentError("tolerance must be positive", "tol");
  auto eval = [&](double lambda) {
    const double v = rho(lambda);
    return std::isnan(v) ? INFINITY : v;
  };
  double lo = 1.0, hi = 1.0;
  double v = eval(1.0);
  int guard = 0;
  if (v > 1.0) {
    while (v > 1.0) {
      lo = hi;
      hi *= 2.0;
      v = eval(hi);
      if (++guard > 2100 || !std::isfinite(hi))
        throw DivergenceError("modular stays above 1 for every scaling");
    }
  } else {
    while (!(v > 1.0)) {
      hi = lo;
      lo *= 0.5;
      v = eval(lo);
      if (++guard > 2100 || lo == 0.0) throw DivergenceError("modular never exceeds 1");
    }
  }
  // Invariant: rho(lo) > 1 >= rho(hi).
  NormResult r;
  double mid = 0.5 * (lo + hi);
  for (r.iterations = 0; r.iterations < 200; ++r.iterations) {
    mid = 0.5 * (lo + hi);
    const double vm = eval(mid);
    const bool narrow = hi - lo <= tol * std::max(1.0, mid);
    if (narrow && std::abs(vm - 1.0) <= tol) break;
    (vm > 1.0 ? lo : hi) = mid;
  }
  r.value = mid;
  r.lo = lo;
  r.hi = hi;
  return r;
}

NormResult luxemburg_sum(const PowerSum& ps, double tol) {
  if (ps.empty()) return {};
  return luxemburg_scalar([&](double l) { return ps(l); }, tol);
}

double pair_terms_sum(const PowerSum& ps) { return ps(1.0); }

}  // namespace

std::vector<double> diagonal_exponent(const ExponentField& field, const Grid& grid) {
  std::vector<double> p(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) p[i] = field.diagonal(grid.node(i));
  return p;
}

ModularResult lebesgue_modular(const GridFunction& u, std::span<const double> pbar,
                               const Grid& grid, Region region) {
  return {pair_terms_sum(lebesgue_terms(u, pbar, grid, region)), ModularKind::lebesgue};
}

ModularResult lebesgue_modular(const GridFunction& u, const ExponentField& field,
                               const Grid& grid, Region region) {
  const auto p = diagonal_exponent(field, grid);
  return lebesgue_modular(u, p, grid, region);
}

ModularResult gagliardo_modular(const GridFunction& u, const ExponentField& field, double s,
                                const Grid& grid, Region a, Region b) {
  return {pair_terms_sum(gagliardo_terms(u, field, s, grid, a, b)), ModularKind::gagliardo};
}

ModularResult combined_modular(const GridFunction& u, const ExponentField& field, double s,
                               const Grid& grid, Region region) {
  const auto p = diagonal_exponent(field, grid);
  const double v = lebesgue_modular(u, p, grid, region).value +
                   gagliardo_modular(u, field, s, grid, region, region).value;
  return {v, ModularKind::combined};
}

NormResult luxemburg_norm(const ModularFn& modular, const GridFunction& u, double tol) {
  if (std::all_of(u.begin(), u.end(), [](double v) { return v == 0.0; })) return {};
  GridFunction scaled(u.size());
  return luxemburg_scalar(
      [&](double lambda) {
        for (std::size_t i = 0; i < u.size(); ++i) scaled[i] = u[i] / lambda;
        return modular(scaled);
      },
      tol);
}

NormResult lebesgue_norm(const GridFunction& u, std::span<const double> pbar, const Grid& grid,
                         Region region, double tol) {
  return luxemburg_sum(lebesgue_terms(u, pbar, grid, region), tol);
}

NormResult lebesgue_norm(const GridFunction& u, const ExponentField& field, const Grid& grid,
                         Region region, double tol) {
  const auto p = diagonal_exponent(field, grid);
  return lebesgue_norm(u, p, grid, region, tol);
}

NormResult sobolev_seminorm(const GridFunction& u, const ExponentField& field, double s,
                            const Grid& grid, Region region, double tol) {
  return luxemburg_sum(gagliardo_terms(u, field, s, grid, region, region), tol);
}

NormResult combined_norm(const GridFunction& u, const ExponentField& field, double s,
                         const Grid& grid, Region region, double tol) {
  const auto p = diagonal_exponent(field, grid);
  PowerSum ps = lebesgue_terms(u, p, grid, region);
  ps.append(gagliardo_terms(u, field, s, grid, region, region));
  return luxemburg_sum(ps, tol);
}

HolderProductResult holder_product_check(const GridFunction& u, const GridFunction& v,
                                         std::span<const double> pbar, const Grid& grid,
                                         Region region) {
  require_size(grid, v);
  std::vector<double> conj(pbar.size());
  for (std::size_t i = 0; i < pbar.size(); ++i) {
    if (!(pbar[i] > 1.0)) throw ArgumentError("exponent must exceed 1", "pbar");
    conj[i] = pbar[i] / (pbar[i] - 1.0);
  }
  HolderProductResult r;
  r.u_norm = lebesgue_norm(u, pbar, grid, region).value;
  r.v_norm = lebesgue_norm(v, conj, grid, region).value;
  for (auto i : region) r.integral += grid.measure(i) * std::abs(u[i] * v[i]);
  const double bound = 2.0 * r.u_norm * r.v_norm;
  r.ratio = bound > 0.0 ? r.integral / bound : 0.0;
  r.pass = r.integral <= bound * (1.0 + 1e-12);
  return r;
}

EmbeddingResult embedding_bound(const GridFunction& u, const ExponentField& field, double s,
                                double sigma, double q, const Grid& grid, Region a,
                                Region region, std::optional<double> diameter, double tol) {
  require_size(grid, u);
  require_region(grid, a, "A");
  require_region(grid, region, "region");
  if (!(s > 0.0 && s < 1.0)) throw ArgumentError("s must lie in (0, 1)", "s");
  if (!(sigma > 0.0 && sigma < s)) throw ArgumentError("sigma must lie in (0, s)", "sigma");
  if (!(q >= 1.0)) throw ArgumentError("q must be at least 1", "q");
  {
    std::unordered_set<std::size_t> in(region.begin(), region.end());
    for (auto i : a)
      if (!in.count(i)) throw ArgumentError("A must be a subset of the region", "A");
  }

  std::vector<Point> pa, pr;
  for (auto i : a) pa.push_back(grid.node(i));
  for (auto i : region) pr.push_back(grid.node(i));
  const auto ext = extrema_over_product(field, pa, pr);

  EmbeddingResult r;
  r.p_minus = ext.p_minus;
  r.p_plus = ext.p_plus;
  if (!(q < r.p_minus)) throw ArgumentError("q must be smaller than p_-", "q");
  r.diameter = diameter.value_or(grid.cell_diameter(region));
  if (r.diameter > 1.0 + 1e-12) throw ArgumentError("region diameter must not exceed 1", "d");
  r.diameter = std::min(r.diameter, 1.0);

  const int n = grid.dim();
  double sum = 0.0;
  for (auto i : a) {
    for (auto j : region) {
      if (i == j) continue;
      const double du = std::abs(u[i] - u[j]);
      if (du == 0.0) continue;
      sum += grid.measure(i) * grid.measure(j) * std::pow(du, q) /
             std::pow(grid.distance(i, j), n + sigma * q);
    }
  }
  r.lhs = std::pow(sum, 1.0 / q);
  r.seminorm = sobolev_seminorm(u, field, s, grid, region, tol).value;

  const double pp = r.p_plus, pm = r.p_minus;
  const double ea = (pp - q) / (pp * q);
  const double eb = (pm - q) / (pm * q);
  const double K = (pp - q) * unit_sphere_area(n) / ((s - sigma) * pp * q);
  r.C = std::pow(2.0, 1.0 / q) * std::max(std::pow(K, ea), std::pow(K, eb));
  const double measure_a = grid.region_measure(a);
  const double X = measure_a * std::pow(r.diameter, (s - sigma) * pp * q / (pp - q));
  const double shape = std::max(std::pow(X, ea), std::pow(X, eb)) * r.seminorm;
  r.rhs = r.C * shape;
  r.C_empirical = shape > 0.0 ? r.lhs / shape : 0.0;
  r.pass = r.lhs <= r.rhs * (1.0 + 1e-12);
  return r;
}

}  // namespace fracplap
