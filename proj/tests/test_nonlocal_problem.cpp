#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <random>

#include "doctest.h"
#include "fracplap/errors.hpp"
#include "fracplap/nonlocal_problem.hpp"

using namespace fracplap;

namespace {

Grid line(int nodes, double r_trunc) {
  GridSpec s;
  s.nodes = nodes;
  s.r_trunc = r_trunc;
  return Grid::build(s);
}

GridFunction sample(const Grid& g, double (*f)(double)) {
  GridFunction u(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) u[i] = f(g.node(i)[0]);
  return u;
}

double identity(double x) { return x; }
double square(double x) { return x * x; }

std::size_t center_node(const Grid& g) {
  for (auto i : g.interior())
    if (std::abs(g.node(i)[0]) < 1e-12) return i;
  return g.size();
}

// Energy of u(x) = x on (-1, 1) with p = 2, s = 1/4 and pairs cut at the horizon H.
double linear_energy_closed_form(double H) {
  return 4.0 / 3.0 * std::pow(H, 1.5) + 0.4 * std::pow(H, 2.5);
}

}  // namespace

TEST_CASE("energy vanishes on constants and is nonnegative") {
  const NonlocalProblem prob(line(33, 2.0), ExponentField::remark_ii(), 0.4);
  CHECK(prob.energy(GridFunction(prob.grid().size(), 1.7)) == 0.0);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int k = 0; k < 20; ++k) {
    GridFunction u(prob.grid().size());
    for (auto& v : u) v = unit(rng);
    CHECK(prob.energy(u) >= 0.0);
  }
}

TEST_CASE("energy of the linear function matches the truncated double integral") {
  const NonlocalProblem prob(line(651, 2.0), ExponentField::constant(2.0), 0.25);
  const double e = prob.energy(sample(prob.grid(), identity));
  const double exact = linear_energy_closed_form(prob.grid().horizon());
  CHECK(std::abs(e - exact) <= 0.01 * exact);
}

TEST_CASE("energy of the linear function is stable under mesh halving") {
  double prev = 0.0;
  for (int nodes : {65, 131, 263}) {
    const NonlocalProblem prob(line(nodes, 2.0), ExponentField::constant(2.0), 0.5);
    const double e = prob.energy(sample(prob.grid(), identity));
    if (prev > 0.0) CHECK(std::abs(e - prev) <= 0.02 * prev);
    prev = e;
  }
}

TEST_CASE("operator values") {
  SUBCASE("constants give zero") {
    const NonlocalProblem prob(line(33, 2.0), ExponentField::remark_i(), 0.5);
    const GridFunction u(prob.grid().size(), -0.4);
    for (auto i : prob.grid().interior()) CHECK(prob.operator_apply(u, i) == 0.0);
  }
  SUBCASE("odd cancellation for the linear function") {
    const NonlocalProblem prob(line(101, 3.0), ExponentField::remark_ii(), 0.5);
    const auto c = center_node(prob.grid());
    CHECK(std::abs(prob.operator_apply(sample(prob.grid(), identity), c)) <= 1e-12);
  }
  SUBCASE("the square has negative operator at its minimum") {
    const NonlocalProblem prob(line(101, 3.0), ExponentField::constant(2.0), 0.5);
    const auto c = center_node(prob.grid());
    const double a = prob.operator_apply(sample(prob.grid(), square), c);
    CHECK(a < 0.0);
    CHECK(a == doctest::Approx(-2.0 * prob.grid().horizon()).epsilon(1e-12));
  }
  SUBCASE("exterior nodes are rejected") {
    const NonlocalProblem prob(line(33, 2.0), ExponentField::constant(2.0), 0.5);
    CHECK_THROWS_AS(prob.operator_apply(GridFunction(prob.grid().size()), prob.grid().exterior()[0]),
                    ArgumentError);
  }
}

TEST_CASE("weak residual") {
  const NonlocalProblem prob(line(65, 2.5), ExponentField::remark_ii(), 0.5);
  const Grid& g = prob.grid();
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  GridFunction phi(g.size(), 0.0);
  for (auto i : g.interior()) phi[i] = unit(rng);

  CHECK(prob.weak_residual(GridFunction(g.size(), 2.0), phi) == 0.0);

  GridFunction u(g.size());
  for (auto& v : u) v = unit(rng);
  GridFunction phi3 = phi;
  for (auto& v : phi3) v *= 3.0;
  const double e1 = prob.weak_residual(u, phi);
  CHECK(prob.weak_residual(u, phi3) == doctest::Approx(3.0 * e1).epsilon(1e-12));

  const auto c = center_node(g);
  GridFunction hat(g.size(), 0.0);
  hat[c] = 1.0;
  CHECK(std::abs(prob.weak_residual(sample(g, identity), hat)) <= 1e-8);

  GridFunction bad = phi;
  bad[g.exterior()[0]] = 1.0;
  CHECK_THROWS_AS(prob.weak_residual(u, bad), ArgumentError);
}

TEST_CASE("weak form is the directional derivative of the energy") {
  const NonlocalProblem prob(line(41, 2.0), ExponentField::remark_i(), 0.45);
  const Grid& g = prob.grid();
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int k = 0; k < 10; ++k) {
    GridFunction u(g.size()), phi(g.size(), 0.0);
    for (auto& v : u) v = unit(rng);
    for (auto i : g.interior()) phi[i] = unit(rng);
    const double step = 1e-5;
    GridFunction up = u, dn = u;
    for (auto i : g.interior()) {
      up[i] += step * phi[i];
      dn[i] -= step * phi[i];
    }
    const double fd = (prob.energy(up) - prob.energy(dn)) / (2.0 * step);
    const double weak = prob.weak_residual(u, phi);
    CHECK(std::abs(weak - fd) <= 1e-6 * (1.0 + std::abs(prob.energy(u))));

    const auto grad = prob.gradient(u);
    double dot = 0.0;
    for (auto i : g.interior()) dot += grad[i] * phi[i];
    CHECK(dot == doctest::Approx(weak).epsilon(1e-10));
  }
}

TEST_CASE("pair weights are symmetric") {
  GridSpec s;
  s.dim = 2;
  s.nodes = 11;
  s.r_trunc = 1.6;
  const NonlocalProblem prob(Grid::build(s), ExponentField::remark_ii(), 0.6);
  const Grid& g = prob.grid();
  const auto in = g.interior();
  for (std::size_t a = 0; a < in.size(); a += 7) {
    for (std::size_t b = a + 1; b < in.size(); b += 5) {
      GridFunction di(g.size(), 0.0), dj(g.size(), 0.0);
      di[in[a]] = 1.0;
      dj[in[b]] = 1.0;
      CHECK(prob.gradient(di)[in[b]] == prob.gradient(dj)[in[a]]);
    }
  }
}

TEST_CASE("tail") {
  const int nodes = 201;
  const Grid g = line(nodes, 4.0);
  const double h = g.spacing()[0];
  const double R = 40.5 * h;

  SUBCASE("zero outside gives zero") {
    const NonlocalProblem prob(g, ExponentField::remark_ii(), 0.5);
    CHECK(prob.tail(GridFunction(g.size(), 0.0), {0.0, 0.0}, R, TailSign::abs).value == 0.0);
  }

  SUBCASE("monotone under scaling") {
    const NonlocalProblem prob(g, ExponentField::remark_ii(), 0.5);
    GridFunction u = sample(g, square), u2 = u;
    for (auto& v : u2) v *= 2.0;
    CHECK(prob.tail(u2, {0.0, 0.0}, R, TailSign::plus).value >=
          prob.tail(u, {0.0, 0.0}, R, TailSign::plus).value);
  }

  SUBCASE("matches adaptive quadrature for smooth data") {
    const double s = 0.4, p = 3.0;
    const NonlocalProblem prob(g, ExponentField::constant(p), s);
    GridFunction u(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) u[i] = 1.0 + 0.5 * square(g.node(i)[0]);
    TailOptions opts;
    opts.r_outer = 300.5 * h;
    const auto t = prob.tail(u, {0.0, 0.0}, R, TailSign::abs, opts);
    auto integrand = [&](double y) {
      return std::pow(1.0 + 0.5 * y * y, p - 1.0) / std::pow(y, 1.0 + s * p);
    };
    const double exact =
        2.0 * boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, R,
                                                                             *opts.r_outer);
    CHECK(t.value == doctest::Approx(exact).epsilon(1e-4));
  }

  SUBCASE("remainder for bounded data is the dropped far field") {
    const double s = 0.5;
    const NonlocalProblem prob(g, ExponentField::constant(2.0), s);
    TailOptions opts;
    opts.r_outer = 3.0;
    const auto t = prob.tail(GridFunction(g.size(), 1.0), {0.0, 0.0}, R, TailSign::abs, opts);
    CHECK(t.remainder == doctest::Approx(std::pow(3.0, -2.0 * s) / s).epsilon(1e-14));
  }

  SUBCASE("balls leaving the domain are rejected") {
    const NonlocalProblem prob(g, ExponentField::constant(2.0), 0.5);
    CHECK_THROWS_AS(prob.tail(GridFunction(g.size(), 1.0), {0.5, 0.0}, 0.6, TailSign::abs),
                    GeometryError);
  }
}

TEST_CASE("level truncations") {
  const Grid g = line(21, 2.0);
  const GridFunction u = sample(g, identity);
  const auto wp = truncate_level(u, 0.0, TailSign::plus);
  const auto wm = truncate_level(u, 0.0, TailSign::minus);
  const auto wa = truncate_level(u, 0.0, TailSign::abs);
  for (std::size_t i = 0; i < u.size(); ++i) {
    CHECK(wp[i] == std::max(u[i], 0.0));
    CHECK(wp[i] - wm[i] == u[i]);
    CHECK(wp[i] * wm[i] == 0.0);
    CHECK(wp[i] + wm[i] == wa[i]);
  }
  const GridFunction k(g.size(), 0.3);
  for (double v : truncate_level(k, 0.3, TailSign::plus)) CHECK(v == 0.0);
  for (double v : truncate_level(k, 0.3, TailSign::minus)) CHECK(v == 0.0);
}
