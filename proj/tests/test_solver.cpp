#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "fracplap/errors.hpp"
#include "fracplap/exterior_data.hpp"
#include "fracplap/solver.hpp"

using namespace fracplap;

namespace {

Grid line(int nodes, double r_trunc) {
  GridSpec s;
  s.nodes = nodes;
  s.r_trunc = r_trunc;
  return Grid::build(s);
}

GridFunction exterior(const Grid& g, ExteriorKind kind, std::uint64_t seed = 0) {
  ExteriorSpec e;
  e.kind = kind;
  e.seed = seed;
  return make_exterior(g, e);
}

}  // namespace

TEST_CASE("constant exterior data is reproduced in one step") {
  const NonlocalProblem prob(line(41, 2.0), ExponentField::remark_ii(), 0.5);
  const GridFunction g(prob.grid().size(), -1.25);
  const auto res = minimize(prob, g);
  CHECK(res.converged);
  CHECK(res.iterations == 1);
  CHECK(res.energy_history.back() == 0.0);
  for (double v : res.u) CHECK(v == -1.25);
}

TEST_CASE("linear exterior data under a radial exponent") {
  const NonlocalProblem prob(line(61, 2.5), ExponentField::remark_ii(), 0.5);
  const auto g = exterior(prob.grid(), ExteriorKind::linear);
  SolveOptions opts;
  opts.grad_tol = 1e-10;
  const auto res = minimize(prob, g, opts);
  double err = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) err = std::max(err, std::abs(res.u[i] - g[i]));
  CHECK(err <= 1e-6);
  CHECK(residual_norm(prob, res.u) <= 1e-10);
  CHECK(comparison_check(prob.grid(), res, g).pass);
}

TEST_CASE("sign data stays within its range") {
  const NonlocalProblem prob(line(81, 2.0), ExponentField::constant(2.0), 0.5);
  const auto g = exterior(prob.grid(), ExteriorKind::sign);
  const auto res = minimize(prob, g);
  const auto cmp = comparison_check(prob.grid(), res, g);
  CHECK(cmp.pass);
  CHECK(cmp.g_min == -1.0);
  CHECK(cmp.g_max == 1.0);
  for (std::size_t j : prob.grid().exterior()) CHECK(res.u[j] == g[j]);
}

TEST_CASE("residual norm") {
  const NonlocalProblem prob(line(41, 2.0), ExponentField::remark_i(), 0.4);
  const Grid& grid = prob.grid();
  CHECK(residual_norm(prob, GridFunction(grid.size(), 0.7)) == 0.0);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int k = 0; k < 10; ++k) {
    GridFunction u(grid.size());
    for (auto& v : u) v = unit(rng);
    CHECK(residual_norm(prob, u) > 0.0);
  }
  SolveOptions opts;
  opts.grad_tol = 1e-9;
  const auto res = minimize(prob, exterior(grid, ExteriorKind::random, 4), opts);
  CHECK(res.final_residual <= 1e-9);
  CHECK(residual_norm(prob, res.u) == doctest::Approx(res.final_residual).epsilon(1e-12));
}

TEST_CASE("comparison principle on random data") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const NonlocalProblem prob(line(41, 2.0), ExponentField::constant(2.0), 0.5);
    const auto g = exterior(prob.grid(), ExteriorKind::random, seed);
    const auto res = minimize(prob, g);
    CHECK(comparison_check(prob.grid(), res, g).pass);
  }
}

TEST_CASE("energy decreases monotonically") {
  const NonlocalProblem prob(line(61, 2.0), ExponentField::remark_ii(), 0.6);
  const auto g = exterior(prob.grid(), ExteriorKind::random, 8);
  const auto res = minimize(prob, g);
  const auto& e = res.energy_history;
  REQUIRE(e.size() >= 2);
  for (std::size_t k = 1; k < e.size(); ++k) CHECK(e[k] <= e[k - 1] * (1.0 + 1e-13));
}

TEST_CASE("repeated solves are identical") {
  const NonlocalProblem prob(line(41, 2.0), ExponentField::remark_i(), 0.5);
  const auto g = exterior(prob.grid(), ExteriorKind::random, 12);
  const auto a = minimize(prob, g), b = minimize(prob, g);
  CHECK(a.u == b.u);
  CHECK(a.energy_history == b.energy_history);
}

TEST_CASE("iteration limits raise with the partial result attached") {
  const NonlocalProblem prob(line(61, 2.0), ExponentField::remark_ii(), 0.5);
  const auto g = exterior(prob.grid(), ExteriorKind::random, 2);
  SolveOptions opts;
  opts.max_iter = 2;
  opts.warm_steps = 0;
  opts.grad_tol = 1e-14;
  try {
    minimize(prob, g, opts);
    FAIL("expected a convergence error");
  } catch (const ConvergenceError& e) {
    CHECK(e.code() == ErrorCode::non_convergence);
    CHECK(e.partial().u.size() == prob.grid().size());
    CHECK(e.partial().iterations == 2);
    CHECK_FALSE(e.partial().converged);
  }
}

TEST_CASE("invalid solver settings are rejected") {
  const NonlocalProblem prob(line(21, 2.0), ExponentField::constant(2.0), 0.5);
  const GridFunction g(prob.grid().size(), 0.0);
  SolveOptions bad;
  bad.backtrack = 1.5;
  CHECK_THROWS_AS(minimize(prob, g, bad), ArgumentError);
  bad = {};
  bad.grad_tol = 0.0;
  CHECK_THROWS_AS(minimize(prob, g, bad), ArgumentError);
  CHECK_THROWS_AS(minimize(prob, GridFunction(3, 0.0)), ArgumentError);

  SolveConfig cfg;
  cfg.sigma = 0.6;
  CHECK_THROWS_AS(minimize(cfg), ArgumentError);
}

TEST_CASE("solving from a configuration") {
  SolveConfig cfg;
  cfg.grid.nodes = 31;
  cfg.grid.r_trunc = 2.0;
  cfg.field.kind = ExponentKind::remark_ii;
  cfg.exterior.kind = ExteriorKind::linear;
  cfg.exterior.slope = 2.0;
  const auto res = minimize(cfg);
  CHECK(res.converged);
  const Grid g = Grid::build(cfg.grid);
  for (std::size_t i = 0; i < g.size(); ++i)
    CHECK(res.u[i] == doctest::Approx(2.0 * g.node(i)[0]).epsilon(1e-6));
}

TEST_CASE("exterior data families") {
  const Grid g = line(41, 3.0);
  ExteriorSpec e;
  e.kind = ExteriorKind::random;
  e.value = 0.5;
  e.amplitude = 0.25;
  e.seed = 99;
  const auto a = make_exterior(g, e), b = make_exterior(g, e);
  CHECK(a == b);
  for (double v : a) CHECK(std::abs(v - 0.5) <= 0.25 + 1e-15);
  e.seed = 100;
  CHECK(make_exterior(g, e) != a);

  const auto fine = line(81, 3.0);
  e.seed = 99;
  const auto af = make_exterior(fine, e);
  CHECK(af[(fine.size() - 1) / 2] == a[(g.size() - 1) / 2]);

  const auto s = exterior(g, ExteriorKind::sign);
  for (std::size_t i = 0; i < g.size(); ++i)
    if (g.node(i)[0] != 0.0) CHECK(std::abs(s[i]) == 1.0);
}
