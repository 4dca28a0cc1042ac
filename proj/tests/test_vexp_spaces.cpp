#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "doctest.h"
#include "fracplap/errors.hpp"
#include "fracplap/vexp_spaces.hpp"

using namespace fracplap;

namespace {

// Omega = (0, 1).
Grid unit_interval(int nodes) {
  GridSpec s;
  s.center = {0.5, 0.0};
  s.half_width = {0.5, 0.5};
  s.nodes = nodes;
  s.r_trunc = 0.5 + 3.0 / nodes;
  return Grid::build(s);
}

std::vector<double> affine_exponent(const Grid& g) {
  return diagonal_exponent(ExponentField::affine(2.0, 1.0, 1.5, 3.5), g);
}

GridFunction filled(const Grid& g, double v) {
  GridFunction u(g.size(), 0.0);
  for (auto i : g.interior()) u[i] = v;
  return u;
}

GridFunction linear(const Grid& g) {
  GridFunction u(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) u[i] = g.node(i)[0];
  return u;
}

GridFunction random_interior(const Grid& g, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const double scale = std::pow(10.0, unit(rng));
  GridFunction u(g.size(), 0.0);
  for (auto i : g.interior()) u[i] = scale * unit(rng);
  return u;
}

// Modular-versus-norm relations: rho > 1 iff norm > 1, and
// norm^{p-} <= rho <= norm^{p+} above one, reversed below.
bool modular_relations_hold(double rho, double norm, double pm, double pp, double slack = 1e-8) {
  if (std::abs(norm - 1.0) > slack && (norm > 1.0) != (rho > 1.0)) return false;
  const double lo = std::pow(norm, norm >= 1.0 ? pm : pp);
  const double hi = std::pow(norm, norm >= 1.0 ? pp : pm);
  return lo <= rho * (1.0 + slack) && rho <= hi * (1.0 + slack);
}

const double kLinearGagliardo = 2.0 / (1.5 * 2.5);  // s = 1/4, p = 2 on (0, 1)

}  // namespace

TEST_CASE("Lebesgue modular") {
  const Grid g = unit_interval(201);
  const auto region = g.interior();
  const std::vector<double> two(g.size(), 2.0);
  CHECK(lebesgue_modular(filled(g, 1.0), two, g, region).value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(lebesgue_modular(filled(g, 0.0), two, g, region).value == 0.0);
  const double m = lebesgue_modular(filled(g, 2.0), affine_exponent(g), g, region).value;
  CHECK(m == doctest::Approx(4.0 / std::numbers::ln2).epsilon(1e-5));
}

TEST_CASE("Luxemburg norms of constants") {
  const Grid g = unit_interval(201);
  const auto region = g.interior();
  const auto n1 = lebesgue_norm(filled(g, 1.0), ExponentField::constant(2.0), g, region);
  CHECK(n1.value == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(n1.lo <= n1.value);
  CHECK(n1.value <= n1.hi);
  CHECK(lebesgue_norm(filled(g, 2.0), ExponentField::constant(3.0), g, region).value ==
        doctest::Approx(2.0).epsilon(1e-10));
  CHECK(lebesgue_norm(filled(g, 2.0), affine_exponent(g), g, region).value ==
        doctest::Approx(2.0).epsilon(1e-10));
  const auto zero = lebesgue_norm(filled(g, 0.0), ExponentField::constant(2.0), g, region);
  CHECK(zero.value == 0.0);
  CHECK(zero.iterations == 0);
}

TEST_CASE("Luxemburg norm of a nonconstant function under a variable exponent") {
  // lambda with sum m (x / lambda)^{2 + x} = 1 on (0, 1), checked against a finer grid.
  const Grid coarse = unit_interval(201), fine = unit_interval(2001);
  auto norm_on = [](const Grid& g) {
    return lebesgue_norm(linear(g), affine_exponent(g), g, g.interior()).value;
  };
  const double a = norm_on(coarse), b = norm_on(fine);
  CHECK(a == doctest::Approx(b).epsilon(1e-4));
  const double rho =
      lebesgue_modular(linear(fine), affine_exponent(fine), fine, fine.interior()).value;
  CHECK(modular_relations_hold(rho, b, 2.0, 3.0));
}

TEST_CASE("Luxemburg search failures") {
  const Grid g = unit_interval(21);
  const ModularFn infinite = [](const GridFunction&) {
    return std::numeric_limits<double>::infinity();
  };
  CHECK_THROWS_AS(luxemburg_norm(infinite, filled(g, 1.0)), DivergenceError);
}

TEST_CASE("Gagliardo modular") {
  const Grid g = unit_interval(651);
  const auto region = g.interior();
  const auto two = ExponentField::constant(2.0);
  CHECK(gagliardo_modular(filled(g, 3.0), two, 0.25, g, region, region).value == 0.0);
  const double m = gagliardo_modular(linear(g), two, 0.25, g, region, region).value;
  CHECK(m == doctest::Approx(kLinearGagliardo).epsilon(0.01));

  std::vector<std::size_t> left, right;
  for (auto i : region) (g.node(i)[0] < 0.4 ? left : right).push_back(i);
  const auto f = ExponentField::remark_ii();
  const double ab = gagliardo_modular(linear(g), f, 0.3, g, left, right).value;
  const double ba = gagliardo_modular(linear(g), f, 0.3, g, right, left).value;
  CHECK(ab == doctest::Approx(ba).epsilon(1e-13));
}

TEST_CASE("Sobolev seminorm") {
  const Grid g = unit_interval(651);
  const auto region = g.interior();
  const auto two = ExponentField::constant(2.0);
  CHECK(sobolev_seminorm(filled(g, 1.0), two, 0.25, g, region).value == 0.0);
  const double n = sobolev_seminorm(linear(g), two, 0.25, g, region).value;
  CHECK(n == doctest::Approx(std::sqrt(kLinearGagliardo)).epsilon(0.01));

  const Grid small = unit_interval(61);
  const auto f = ExponentField::remark_ii();
  const auto u = linear(small);
  const double lambda = sobolev_seminorm(u, f, 0.5, small, small.interior()).value;
  GridFunction unit = u;
  for (auto& v : unit) v /= lambda;
  const double rho =
      gagliardo_modular(unit, f, 0.5, small, small.interior(), small.interior()).value;
  CHECK(rho == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("modular and norm relations on random samples") {
  const Grid g = unit_interval(41);
  const auto region = g.interior();
  const auto f = ExponentField::remark_ii();
  const double s = 0.5;
  std::vector<Point> pts;
  for (auto i : region) pts.push_back(g.node(i));
  const auto e = extrema_over_product(f, pts, pts);
  const auto pbar = diagonal_exponent(f, g);
  double dm = INFINITY, dp = -INFINITY;
  for (auto i : region) {
    dm = std::min(dm, pbar[i]);
    dp = std::max(dp, pbar[i]);
  }
  std::mt19937_64 rng(17);
  for (int k = 0; k < 200; ++k) {
    const auto u = random_interior(g, rng);
    const double rl = lebesgue_modular(u, pbar, g, region).value;
    const double nl = lebesgue_norm(u, pbar, g, region).value;
    CHECK(modular_relations_hold(rl, nl, dm, dp));

    const double rg = gagliardo_modular(u, f, s, g, region, region).value;
    const double ng = sobolev_seminorm(u, f, s, g, region).value;
    CHECK(modular_relations_hold(rg, ng, e.p_minus, e.p_plus));

    const double rc = combined_modular(u, f, s, g, region).value;
    const double nc = combined_norm(u, f, s, g, region).value;
    CHECK(modular_relations_hold(rc, nc, std::min(dm, e.p_minus), std::max(dp, e.p_plus)));

    const double sum = nl + ng;
    CHECK(nc <= sum * (1.0 + 1e-9));
    CHECK(sum <= 2.0 * nc * (1.0 + 1e-9));
  }
}

TEST_CASE("Hoelder product inequality") {
  const Grid g = unit_interval(101);
  const auto region = g.interior();
  const std::vector<double> two(g.size(), 2.0);
  const auto ones = filled(g, 1.0);
  const auto r = holder_product_check(ones, ones, two, g, region);
  CHECK(r.pass);
  CHECK(r.ratio == doctest::Approx(0.5).epsilon(1e-9));

  const auto pbar = affine_exponent(g);
  std::mt19937_64 rng(23);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const auto u = random_interior(g, rng), v = random_interior(g, rng);
    const auto rep = holder_product_check(u, v, pbar, g, region);
    CHECK(rep.pass);
    worst = std::max(worst, rep.ratio);
  }
  CHECK(worst <= 1.0);
}

TEST_CASE("embedding into a lower-order space") {
  const Grid g = unit_interval(81);
  const auto region = g.interior();
  const auto two = ExponentField::constant(2.0);

  const auto c = embedding_bound(filled(g, 2.0), two, 0.5, 0.25, 1.5, g, region, region);
  CHECK(c.lhs == 0.0);
  CHECK(c.pass);

  const auto lin = embedding_bound(linear(g), two, 0.5, 0.25, 1.5, g, region, region);
  CHECK(lin.pass);
  CHECK(lin.lhs > 0.0);
  CHECK(lin.C_empirical <= lin.C);

  const auto f = ExponentField::remark_ii();
  std::mt19937_64 rng(29);
  for (int k = 0; k < 50; ++k) {
    const auto u = random_interior(g, rng);
    const auto rep = embedding_bound(u, f, 0.5, 0.2, 1.2, g, region, region);
    CHECK(rep.pass);
  }

  CHECK_THROWS_AS(embedding_bound(linear(g), two, 0.5, 0.25, 2.0, g, region, region),
                  ArgumentError);
  const auto sub = g.ball({0.5, 0.0}, 0.2);
  CHECK_THROWS_AS(embedding_bound(linear(g), two, 0.5, 0.25, 1.5, g, region, sub), ArgumentError);
}
