// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "fracplap/exponent_field.hpp"
#include "fracplap/exterior_data.hpp"
#include "fracplap/grid.hpp"
#include "fracplap/nonlocal_problem.hpp"
#include "fracplap/regularity.hpp"
#include "fracplap/solver.hpp"
#include "fracplap/vexp_spaces.hpp"

using namespace fracplap;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

Grid grid1d(int nodes, double r_trunc, double center = 0.0, double half = 1.0) {
  GridSpec s;
  s.dim = 1;
  s.center = {center, 0.0};
  s.half_width = {half, half};
  s.r_trunc = r_trunc;
  s.nodes = nodes;
  return Grid::build(s);
}

// Iteration lemma for (C, b, beta) = (1, 2, {1}), Y0 = 1/2.
Outcome criterion1() {
  const auto res = degiorgi_iterate(DeGiorgiParams{1.0, 2.0, {1.0}, 0.5}, 50);
  long double worst = -1.0L;
  for (std::size_t j = 0; j < res.Y.size(); ++j) {
    const long double target = std::pow(2.0L, -1.0L - static_cast<long double>(j));
    worst = std::max(worst, (res.Y[j] - target) / target);
  }
  const bool ok = res.threshold_met && res.bound_holds && res.Y.size() == 51 && worst <= 1e-12L;
  return {ok, fmt("max relative excess over 2^{-1-j}: %.3g", static_cast<double>(worst))};
}

// Algebraic inequality sweep with the explicit constant.
Outcome criterion2() {
  const std::pair<double, double> ranges[] = {{1.5, 3.0}, {1.1, 1.2}, {2.0, 5.0}};
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::size_t violations = 0, total = 0;
  double worst = -INFINITY;
  for (const auto& [pm, pp] : ranges) {
    for (int k = 0; k < 100000; ++k) {
      const double a = 10.0 * unit(rng), b = 10.0 * unit(rng);
      const double t1 = unit(rng), t2 = unit(rng);
      const double p = pm + (pp - pm) * unit(rng);
      const auto r = algebraic_inequality_check(a, b, t1, t2, p, pm, pp);
      worst = std::max(worst, r.rhs - r.lhs);
      if (!r.holds) ++violations;
      ++total;
    }
  }
  return {violations == 0,
          fmt("%.0f violations in %.0f tuples, max rhs-lhs %.3g", double(violations),
              double(total), worst)};
}

// Linear exterior data reproduces the linear function exactly.
Outcome criterion3() {
  Grid grid = grid1d(101, 3.98);
  GridFunction g(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) g[i] = grid.node(i)[0];
  const NonlocalProblem prob(std::move(grid), ExponentField::remark_ii(), 0.5);
  SolveOptions opts;
  opts.grad_tol = 1e-9;
  const auto res = minimize(prob, g, opts);
  double err = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) err = std::max(err, std::abs(res.u[i] - g[i]));
  const double rn = prob.residual_norm(res.u);
  return {prob.grid().size() == 401 && err <= 1e-6 && rn <= 1e-8,
          fmt("%.0f nodes, max nodal error %.3g, residual %.3g", double(prob.grid().size()), err,
              rn)};
}

struct Instance {
  std::shared_ptr<NonlocalProblem> prob;
  GridFunction g;
  GridFunction u;
};

std::vector<Instance> solve_family(int nodes) {
  std::vector<Instance> out;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Grid grid = grid1d(nodes, 2.0);
    ExteriorSpec ext;
    ext.kind = ExteriorKind::random;
    ext.amplitude = 1.0;
    ext.modes = 4;
    ext.seed = seed;
    GridFunction g = make_exterior(grid, ext);
    auto prob = std::make_shared<NonlocalProblem>(std::move(grid), ExponentField::constant(2.0), 0.5);
    SolveOptions opts;
    opts.grad_tol = 1e-10;
    auto res = minimize(*prob, g, opts);
    out.push_back({prob, std::move(g), std::move(res.u)});
  }
  return out;
}

// Discrete maximum principle over a seeded family.
Outcome criterion4(const std::vector<Instance>& family) {
  double worst = -INFINITY;
  for (const auto& inst : family) {
    SolveResult r;
    r.u = inst.u;
    const auto rep = comparison_check(inst.prob->grid(), r, inst.g, 1e-8);
    double excess = -INFINITY;
    for (std::size_t i : inst.prob->grid().interior())
      excess = std::max(excess, std::max(rep.g_min - inst.u[i], inst.u[i] - rep.g_max));
    worst = std::max(worst, excess);
  }
  return {worst <= 1e-8, fmt("20 instances, max excess beyond [min g, max g]: %.3g", worst)};
}

// Luxemburg norm against the classical norm, and the modular/norm relations.
Outcome criterion5() {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const Grid grid = grid1d(41, 1.2);
  const auto region = grid.interior();
  double worst_classical = 0.0;
  for (double p : {1.5, 2.0, 3.0}) {
    const auto field = ExponentField::constant(p);
    for (int k = 0; k < 100; ++k) {
      GridFunction u(grid.size(), 0.0);
      const double scale = std::pow(10.0, unit(rng));
      for (std::size_t i : region) u[i] = scale * unit(rng);
      double sum = 0.0;
      for (std::size_t i : region) sum += grid.measure(i) * std::pow(std::abs(u[i]), p);
      const double classical = std::pow(sum, 1.0 / p);
      const double lux = lebesgue_norm(u, field, grid, region).value;
      worst_classical = std::max(worst_classical, std::abs(lux - classical) / classical);
    }
  }

  const auto field = ExponentField::remark_ii();
  const auto pbar = diagonal_exponent(field, grid);
  double pm = INFINITY, pp = -INFINITY;
  for (std::size_t i : region) {
    pm = std::min(pm, pbar[i]);
    pp = std::max(pp, pbar[i]);
  }
  int failures = 0;
  for (int k = 0; k < 1000; ++k) {
    GridFunction u(grid.size(), 0.0);
    const double scale = std::pow(10.0, unit(rng));
    for (std::size_t i : region) u[i] = scale * unit(rng);
    const double rho = lebesgue_modular(u, pbar, grid, region).value;
    const double norm = lebesgue_norm(u, pbar, grid, region).value;
    const double slack = 1e-8;
    const bool tri = (norm > 1.0) == (rho > 1.0) || std::abs(norm - 1.0) <= slack;
    const double lo = std::pow(norm, norm >= 1.0 ? pm : pp);
    const double hi = std::pow(norm, norm >= 1.0 ? pp : pm);
    const bool sandwich = lo <= rho * (1.0 + slack) && rho <= hi * (1.0 + slack);
    if (!tri || !sandwich) ++failures;
  }
  return {worst_classical <= 1e-10 && failures == 0,
          fmt("max relative deviation from classical norm %.3g, %.0f relation failures in 1000",
              worst_classical, double(failures))};
}

// Gagliardo modular of u(x) = x on (0, 1) against its closed form.
Outcome criterion6() {
  const double s = 0.25;
  const Grid grid = grid1d(651, 0.51, 0.5, 0.5);
  GridFunction u(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) u[i] = grid.node(i)[0];
  const auto region = grid.interior();
  const double value =
      gagliardo_modular(u, ExponentField::constant(2.0), s, grid, region, region).value;
  const double exact = 2.0 / ((2.0 - 2.0 * s) * (3.0 - 2.0 * s));
  const double rel = std::abs(value - exact) / exact;
  return {rel <= 0.01, fmt("grid %.6f vs closed form %.6f, relative error %.3g", value, exact, rel)};
}

// Tail of u = 1 against the truncated closed form.
Outcome criterion7() {
  const double s = 0.5;
  const int nodes = 401;
  const double h = 2.0 / nodes;
  const double R = 101.5 * h;
  const Grid grid = grid1d(nodes, 4.1);
  const GridFunction u(grid.size(), 1.0);
  const NonlocalProblem prob(grid, ExponentField::constant(2.0), s);
  TailOptions opts;
  opts.r_outer = 8.0 * R;
  const auto t = prob.tail(u, {0.0, 0.0}, R, TailSign::abs, opts);
  const double untruncated = std::pow(R, -2.0 * s) / s;
  const double remainder = std::pow(*opts.r_outer, -2.0 * s) / s;
  const double target = untruncated - remainder;
  const double err = std::abs(t.value - target);
  return {err <= 1e-4, fmt("grid %.8f vs truncated closed form %.8f, error %.3g", t.value, target,
                           err)};
}

struct CaccioppoliSummary {
  bool all_satisfied = true;
  bool bounded = true;
  double max_empirical = 0.0;
  int count = 0;
};

CaccioppoliSummary caccioppoli_family(const std::vector<Instance>& family) {
  CaccioppoliSummary out;
  const Point x0{0.0, 0.0};
  const double R = 0.5;
  for (const auto& inst : family) {
    for (double k : ball_quantiles(inst.prob->grid(), inst.u, x0, R, {0.25, 0.5, 0.75})) {
      const auto rep = caccioppoli_report(*inst.prob, inst.u, x0, R / 2.0, R, k);
      out.all_satisfied = out.all_satisfied && rep.satisfied;
      out.bounded = out.bounded && rep.C_empirical <= rep.C_explicit;
      out.max_empirical = std::max(out.max_empirical, rep.C_empirical);
      ++out.count;
    }
  }
  return out;
}

// Energy estimate on the solved family and its refinement.
Outcome criterion8(const std::vector<Instance>& coarse, const std::vector<Instance>& fine) {
  const auto a = caccioppoli_family(coarse);
  const auto b = caccioppoli_family(fine);
  const double ratio = a.max_empirical > 0.0 ? b.max_empirical / a.max_empirical : 0.0;
  const bool stable = ratio >= 0.5 && ratio <= 2.0;
  return {a.all_satisfied && b.all_satisfied && a.bounded && b.bounded && stable,
          fmt("%.0f reports per mesh, max C_empirical %.4g -> %.4g", double(a.count),
              a.max_empirical, b.max_empirical) +
              (stable ? "" : " (unstable)")};
}

// Exponent conditions for the presets.
Outcome criterion9() {
  GridSpec spec;
  spec.dim = 1;
  spec.nodes = 129;
  spec.r_trunc = 4.0;
  const Grid grid = Grid::build(spec);
  const std::vector<double> radii{0.1, 0.2, 0.4};
  const std::vector<Point> centers{{0.0, 0.0}, {0.3, 0.0}};
  const std::vector<double> scales{0.25, 0.0625, 0.015625, 0.00390625};

  const auto r2 = ExponentField::remark_ii();
  const bool ii_p1 = check_P1(r2, spec, radii, centers).pass;
  const bool ii_p2 = check_P2(r2, grid, radii, centers).pass;

  const auto r1 = ExponentField::remark_i();
  const bool i_p1 = check_P1(r1, spec, radii, centers).pass;
  const auto lh = check_log_holder(r1, grid, scales);
  const double smallest = *std::min_element(scales.begin(), scales.end());
  const bool i_lh_fails = !lh.pass && lh.witness.radius == smallest;

  const auto c = check_P1(ExponentField::constant(2.0), spec, radii, centers);
  const bool const_L = c.pass && c.L_est == 1.0;
  std::string d = std::string("remark_ii P1 ") + (ii_p1 ? "pass" : "fail") + ", P2 " +
                  (ii_p2 ? "pass" : "fail") + "; remark_i P1 " + (i_p1 ? "pass" : "fail") +
                  ", log-Hoelder " + (lh.pass ? "pass" : "fail") +
                  fmt(" at scale %.6g; constant L_est %.17g", lh.witness.radius, c.L_est);
  return {ii_p1 && ii_p2 && i_p1 && i_lh_fails && const_L, d};
}

// Oscillation-decay estimator: calibration and solved instance.
Outcome criterion10() {
  const Grid syn = grid1d(801, 1.2);
  GridFunction u(syn.size());
  for (std::size_t i = 0; i < syn.size(); ++i) u[i] = std::sqrt(std::abs(syn.node(i)[0]));
  const auto cal = holder_exponent_fit(syn, u, {0.0, 0.0}, 0.8, 3);

  auto solved_alpha = [](int nodes) {
    Grid grid = grid1d(nodes, 2.0);
    ExteriorSpec ext;
    ext.kind = ExteriorKind::random;
    ext.seed = 3;
    const GridFunction g = make_exterior(grid, ext);
    const NonlocalProblem prob(std::move(grid), ExponentField::constant(2.0), 0.5);
    SolveOptions opts;
    opts.grad_tol = 1e-10;
    const auto res = minimize(prob, g, opts);
    return holder_exponent_fit(prob.grid(), res.u, {0.0, 0.0}, 0.8, 2).alpha;
  };
  const double a1 = solved_alpha(401), a2 = solved_alpha(801);
  const bool ok = cal.defined && std::abs(cal.alpha - 0.5) <= 0.05 && a1 > 0.2 && a2 > 0.2 &&
                  std::abs(a1 - a2) <= 0.05;
  return {ok, fmt("calibration alpha %.4f; solved alpha %.4f -> %.4f", cal.alpha, a1, a2)};
}

// Analytic gradient against central differences.
Outcome criterion11() {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const Grid grid = grid1d(33, 1.5);
  const std::vector<ExponentField> fields{ExponentField::constant(2.0), ExponentField::remark_i(),
                                          ExponentField::remark_ii()};
  const double step = 1e-5;
  double worst = 0.0;
  for (const auto& field : fields) {
    const NonlocalProblem prob(grid, field, 0.5);
    for (int k = 0; k < 20; ++k) {
      GridFunction u(grid.size());
      for (auto& v : u) v = unit(rng);
      const auto grad = prob.gradient(u);
      double num = 0.0, den = 0.0;
      for (std::size_t i : grid.interior()) {
        GridFunction up = u, dn = u;
        up[i] += step;
        dn[i] -= step;
        const double fd = (prob.energy(up) - prob.energy(dn)) / (2.0 * step);
        num = std::max(num, std::abs(fd - grad[i]));
        den = std::max(den, std::abs(grad[i]));
      }
      worst = std::max(worst, num / den);
    }
  }
  return {worst <= 1e-5, fmt("max relative gradient error %.3g over 60 states", worst)};
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](int id, const std::function<Outcome()>& run) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failures;
    std::printf("criterion %2d: %s  %s  [%.2f s]\n", id, o.pass ? "PASS" : "FAIL", o.detail.c_str(),
                secs);
    std::fflush(stdout);
  };

  report(1, criterion1);
  report(2, criterion2);
  report(3, criterion3);
  std::vector<Instance> coarse, fine;
  report(4, [&] {
    coarse = solve_family(101);
    return criterion4(coarse);
  });
  report(5, criterion5);
  report(6, criterion6);
  report(7, criterion7);
  report(8, [&] {
    fine = solve_family(201);
    return criterion8(coarse, fine);
  });
  report(9, criterion9);
  report(10, criterion10);
  report(11, criterion11);
  std::printf("%d of 11 criteria passed\n", 11 - failures);
  return failures == 0 ? 0 : 1;
}
