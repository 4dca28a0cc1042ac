#include "fracplap/regularity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "fracplap/errors.hpp"

namespace fracplap {

namespace {

std::vector<Point> points_of(const Grid& grid, const std::vector<std::size_t>& idx) {
  std::vector<Point> pts;
  pts.reserve(idx.size());
  for (auto i : idx) pts.push_back(grid.node(i));
  return pts;
}

ProductExtrema ball_extrema(const NonlocalProblem& prob, const std::vector<std::size_t>& ball) {
  const auto pts = points_of(prob.grid(), ball);
  return extrema_over_product(prob.field(), pts, pts);
}

double critical_exponent(int n, double sigma, double p_minus) {
  const double den = n - sigma * p_minus;
  return den > 0.0 ? n * p_minus / den : std::numeric_limits<double>::infinity();
}

// sup_{x in xs} sum_{y in ys} m w(y)^{p(x,y)-1} / |y - x0|^{n+s p(x,y)} * factor^{n+s p}
double sup_tail(const NonlocalProblem& prob, const GridFunction& w,
                const std::vector<std::size_t>& xs, const std::vector<std::size_t>& ys,
                const Point& x0, double factor) {
  const Grid& grid = prob.grid();
  const int n = grid.dim();
  const double s = prob.s();
  std::vector<std::size_t> support;
  for (auto j : ys)
    if (w[j] > 0.0) support.push_back(j);
  if (support.empty()) return 0.0;
  double best = 0.0;
  for (auto i : xs) {
    double acc = 0.0;
    for (auto j : support) {
      const double p = prob.field()(grid.node(i), grid.node(j));
      const double e = n + s * p;
      acc += grid.measure(j) * std::pow(w[j], p - 1.0) *
             std::pow(factor / distance(grid.node(j), x0), e);
    }
    best = std::max(best, acc);
    if (prob.field().is_constant()) break;
  }
  return best;
}

}  // namespace

double algebraic_constant(double p_minus, double p_plus) {
  return (p_plus / p_minus) * std::pow(2.0 * p_plus, p_plus - 1.0);
}

AlgebraicCheck algebraic_inequality_check(double a, double b, double tau1, double tau2, double p,
                                          double p_minus, double p_plus) {
  if (!(a >= 0.0) || !(b >= 0.0)) throw ArgumentError("a and b must be nonnegative", "a");
  if (!(tau1 >= 0.0 && tau1 <= 1.0) || !(tau2 >= 0.0 && tau2 <= 1.0))
    throw ArgumentError("tau1 and tau2 must lie in [0, 1]", "tau");
  if (!(p_minus > 1.0) || !(p_plus >= p_minus) || !std::isfinite(p_plus))
    throw ArgumentError("exponent bounds must satisfy 1 < p_minus <= p_plus < inf", "p_minus");
  if (!(p >= p_minus && p <= p_plus)) throw ArgumentError("p must lie in [p_minus, p_plus]", "p");
  AlgebraicCheck r;
  r.C = algebraic_constant(p_minus, p_plus);
  const double d = a - b;
  const double ad = std::abs(d);
  const double phi = ad == 0.0 ? 0.0 : std::copysign(std::pow(ad, p - 1.0), d);
  r.lhs = phi * (a * std::pow(tau1, p_plus) - b * std::pow(tau2, p_plus));
  r.rhs = 0.5 * std::pow(ad, p) * std::pow(std::max(tau1, tau2), p_plus) -
          r.C * std::pow(std::max(a, b), p) * std::pow(std::abs(tau1 - tau2), p);
  r.holds = r.lhs >= r.rhs - 1e-9;
  return r;
}

std::vector<double> ball_quantiles(const Grid& grid, const GridFunction& u, const Point& x0,
                                   double R, const std::vector<double>& fractions) {
  if (u.size() != grid.size()) throw ArgumentError("grid function size mismatch", "u");
  const auto ball = grid.ball(x0, R, BallKind::open);
  if (ball.empty()) throw GeometryError("ball contains no grid nodes", "R");
  std::vector<double> v;
  v.reserve(ball.size());
  for (auto i : ball) v.push_back(u[i]);
  std::sort(v.begin(), v.end());
  std::vector<double> out;
  for (double t : fractions) {
    if (!(t >= 0.0 && t <= 1.0)) throw ArgumentError("quantile fractions lie in [0, 1]", "fractions");
    const double pos = t * static_cast<double>(v.size() - 1);
    const auto lo = static_cast<std::size_t>(pos);
    const auto hi = std::min(lo + 1, v.size() - 1);
    out.push_back(v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]));
  }
  return out;
}

CaccioppoliReport caccioppoli_report(const NonlocalProblem& problem, const GridFunction& u,
                                     const Point& x0, double r, double R, double k) {
  const Grid& grid = problem.grid();
  if (u.size() != grid.size()) throw ArgumentError("grid function size mismatch", "u");
  if (!(r > 0.0 && r < R)) throw GeometryError("radii must satisfy 0 < r < R", "r");
  if (!grid.open_ball_in_omega(x0, R)) throw GeometryError("B_R must lie inside the domain", "R");
  const auto ballR = grid.ball(x0, R, BallKind::open);
  const auto ballr = grid.ball(x0, r, BallKind::open);
  if (ballr.empty()) throw GeometryError("inner ball contains no grid nodes", "r");
  const double rho = 0.5 * (R + r);
  const auto ballrho = grid.ball(x0, rho, BallKind::open);
  const auto outside = grid.outside_ball(x0, R);

  const int n = grid.dim();
  const double s = problem.s();
  const auto& field = problem.field();
  const GridFunction wp = truncate_level(u, k, TailSign::plus);
  const GridFunction wm = truncate_level(u, k, TailSign::minus);

  CaccioppoliReport rep;
  rep.k = k;
  rep.r = r;
  rep.R = R;
  const auto ext = ball_extrema(problem, ballR);
  rep.p_minus = ext.p_minus;
  rep.p_plus = ext.p_plus;

  std::vector<char> in_r(grid.size(), 0);
  for (auto i : ballr) in_r[i] = 1;
  for (auto i : ballr) {
    for (auto j : ballR) {
      if (!grid.interacts(i, j)) continue;
      const double p = field(grid.node(i), grid.node(j));
      const double ker = grid.measure(i) * grid.measure(j) / std::pow(grid.distance(i, j), n + s * p);
      if (in_r[j]) {
        const double dw = std::abs(wp[i] - wp[j]);
        if (dw > 0.0) rep.lhs_modular += ker * std::pow(dw, p);
      }
      if (wp[i] > 0.0 && wm[j] > 0.0) rep.lhs_cross += ker * wp[i] * std::pow(wm[j], p - 1.0);
    }
  }

  const double gap = R - r;
  double mass = 0.0;
  for (auto i : ballR) {
    mass += grid.measure(i) * wp[i];
    if (wp[i] == 0.0) continue;
    for (auto j : ballR) {
      if (i == j) continue;
      const double p = field(grid.node(i), grid.node(j));
      rep.rhs_local += grid.measure(i) * grid.measure(j) * std::pow(wp[i] / gap, p) /
                       std::pow(grid.distance(i, j), n - (1.0 - s) * p);
    }
  }
  rep.rhs_tail = sup_tail(problem, wp, ballrho, outside, x0, 2.0 * R / gap) * mass;

  const double c = std::min(std::pow(2.0, rep.p_minus - 2.0), 1.0);
  const double coerc = std::min(0.5, c);
  rep.C_explicit = 2.0 * algebraic_constant(rep.p_minus, rep.p_plus) *
                   std::pow(4.0, rep.p_plus) / coerc;

  GridFunction phi(grid.size(), 0.0);
  for (auto i : ballrho) {
    const double d = distance(grid.node(i), x0);
    const double eta = d <= r ? 1.0 : std::clamp((rho - d) / (rho - r), 0.0, 1.0);
    phi[i] = wp[i] * std::pow(eta, rep.p_plus);
  }
  const double E = problem.weak_residual(u, phi);
  const double lhs = rep.lhs_modular + rep.lhs_cross;
  const double rhs = rep.rhs_local + rep.rhs_tail;
  rep.slack = std::max(0.0, E) / coerc + 1e-12 * (1.0 + lhs);
  rep.C_empirical = lhs == 0.0 ? 0.0 : (rhs > 0.0 ? lhs / rhs : INFINITY);
  rep.satisfied = lhs <= rep.C_explicit * rhs + rep.slack;
  return rep;
}

DeGiorgiResult degiorgi_iterate(const DeGiorgiParams& prm, int j_max) {
  if (!(prm.C >= 1.0) || !std::isfinite(prm.C)) throw ArgumentError("C must be at least 1", "C");
  if (!(prm.b > 1.0) || !std::isfinite(prm.b)) throw ArgumentError("b must exceed 1", "b");
  if (prm.betas.empty()) throw ArgumentError("at least one beta is required", "betas");
  for (std::size_t i = 0; i < prm.betas.size(); ++i) {
    if (!(prm.betas[i] > 0.0) || !std::isfinite(prm.betas[i]))
      throw ArgumentError("betas must be positive", "betas");
    if (i > 0 && prm.betas[i] > prm.betas[i - 1])
      throw ArgumentError("betas must be non-increasing", "betas");
  }
  if (!(prm.Y0 >= 0.0) || !std::isfinite(prm.Y0)) throw ArgumentError("Y0 must be nonnegative", "y0");
  if (j_max < 0) throw ArgumentError("jmax must be nonnegative", "jmax");

  using LD = long double;
  const LD C = prm.C, b = prm.b;
  const LD b1 = prm.betas.front(), bN = prm.betas.back();
  DeGiorgiResult res;
  res.threshold = std::min(std::pow(C, -1.0L / bN) * std::pow(b, -1.0L / (bN * bN)),
                           std::pow(C, -1.0L / b1));
  res.threshold_met = static_cast<LD>(prm.Y0) <= res.threshold;

  LD y = prm.Y0;
  res.bound_holds = res.threshold_met;
  for (int j = 0; j <= j_max; ++j) {
    const LD bound = std::pow(C, -1.0L / bN) * std::pow(b, -1.0L / (bN * bN) - j / bN);
    res.Y.push_back(y);
    res.bound.push_back(bound);
    if (res.threshold_met) {
      const LD excess = (y - bound) / bound;
      res.max_relative_excess = j == 0 ? excess : std::max(res.max_relative_excess, excess);
      if (excess > 1e-12L) res.bound_holds = false;
    }
    LD worst = 0.0L;
    for (double beta : prm.betas) worst = std::max(worst, std::pow(y, 1.0L + beta));
    y = C * std::pow(b, static_cast<LD>(j)) * worst;
  }
  return res;
}

SupBoundReport sup_bound_check(const NonlocalProblem& problem, const GridFunction& u,
                               const Point& x0, double R0, double sigma, double q, double C) {
  const Grid& grid = problem.grid();
  if (u.size() != grid.size()) throw ArgumentError("grid function size mismatch", "u");
  if (!(sigma > 0.0 && sigma < problem.s())) throw ArgumentError("sigma must lie in (0, s)", "sigma");
  if (!(R0 > 0.0)) throw ArgumentError("radius must be positive", "R");
  const int n = grid.dim();
  const double s = problem.s();
  SupBoundReport rep;
  rep.q = q;
  rep.C = C;

  if (problem.field()(x0, x0) > n / s * (1.0 + 1e-12)) {
    rep.reason = "p(x0, x0) exceeds n/s";
    return rep;
  }

  std::vector<std::size_t> ballR, half;
  double R = std::min(R0, 1.0 - 1e-12);
  for (int attempt = 0;; ++attempt, R *= 0.9) {
    half = grid.ball(x0, 0.5 * R, BallKind::open);
    if (half.empty() || attempt > 400) {
      rep.reason = "no admissible radius resolvable on the grid";
      return rep;
    }
    if (!grid.open_ball_in_omega(x0, R)) continue;
    ballR = grid.ball(x0, R, BallKind::open);
    const auto ext = ball_extrema(problem, ballR);
    const double pstar = critical_exponent(n, sigma, ext.p_minus);
    const double q_lo = std::max(ext.p_plus, n / (n - sigma));
    rep.p_minus = ext.p_minus;
    rep.p_plus = ext.p_plus;
    rep.p_star = pstar;
    rep.R = R;
    if (ext.p_plus < pstar && q > q_lo && q < pstar) break;
  }
  rep.applicable = true;

  const double pp = rep.p_plus, pm = rep.p_minus;
  rep.lhs_sup = -INFINITY;
  for (auto i : half) rep.lhs_sup = std::max(rep.lhs_sup, u[i]);
  double num = 0.0, vol = 0.0;
  for (auto i : ballR) {
    num += grid.measure(i) * std::pow(std::max(u[i], 0.0), pp);
    vol += grid.measure(i);
  }
  rep.average = num / vol;
  rep.local_term = rep.average > 0.0
                       ? std::max(std::pow(rep.average, 1.0 / pp),
                                  std::pow(rep.average, (q - pm) / (pm * (q - pp))))
                       : 0.0;
  const GridFunction up = truncate_level(u, 0.0, TailSign::plus);
  rep.tail = sup_tail(problem, up, ballR, grid.outside_ball(x0, 0.5 * R), x0, 1.0);
  rep.tail_term = std::pow(rep.tail, 1.0 / (pp - 1.0));
  rep.rhs_bound = C * rep.local_term + rep.tail_term + 1.0;
  const double need = rep.lhs_sup - rep.tail_term - 1.0;
  if (rep.local_term > 0.0) {
    rep.C_required = std::max(0.0, need / rep.local_term);
    rep.C_local = std::max(0.0, rep.lhs_sup) / rep.local_term;
  } else {
    rep.C_required = need <= 0.0 ? 0.0 : INFINITY;
    rep.C_local = rep.lhs_sup <= 0.0 ? 0.0 : INFINITY;
  }
  rep.pass = rep.lhs_sup <= rep.rhs_bound;
  return rep;
}

GrowthReport growth_lemma_check(const NonlocalProblem& problem, const GridFunction& u,
                                const GrowthScenario& sc) {
  const Grid& grid = problem.grid();
  const int n = grid.dim();
  const double s = problem.s();
  GrowthReport rep;
  auto add = [&](std::string name, bool holds, double measured, double limit) {
    if (!holds) rep.unmet.push_back(name);
    rep.hypotheses.push_back({std::move(name), holds, measured, limit});
  };

  const bool params_ok = sc.H > 0.0 && sc.delta > 0.0 && sc.delta <= 0.125 && sc.gamma > 0.0 &&
                         sc.gamma < 1.0 && sc.R > 0.0 && sc.R < 1.0 && sc.sigma > 0.0 &&
                         sc.sigma < s && u.size() == grid.size() &&
                         grid.open_ball_in_omega(sc.x0, sc.R) &&
                         !grid.ball(sc.x0, 0.25 * sc.R, BallKind::open).empty();
  add("scenario parameters in range and B_R inside the domain", params_ok, 0.0, 0.0);
  rep.target = sc.delta * sc.H;
  if (!params_ok) {
    rep.pass = true;
    return rep;
  }

  const auto ballR = grid.ball(sc.x0, sc.R, BallKind::open);
  const auto half = grid.ball(sc.x0, 0.5 * sc.R, BallKind::open);
  const auto quarter = grid.ball(sc.x0, 0.25 * sc.R, BallKind::open);
  const auto ext = ball_extrema(problem, ballR);
  const double pp = ext.p_plus, pm = ext.p_minus;

  double lo = INFINITY, hi = -INFINITY;
  for (auto i : ballR) {
    lo = std::min(lo, u[i]);
    hi = std::max(hi, u[i]);
  }
  add("0 <= u <= 2H on B_R", lo >= 0.0 && hi <= 2.0 * sc.H, hi, 2.0 * sc.H);

  double above = 0.0, vol = 0.0;
  for (auto i : half) {
    vol += grid.measure(i);
    if (u[i] >= sc.H) above += grid.measure(i);
  }
  add("|B_{R/2} & {u >= H}| >= gamma |B_{R/2}|", above >= sc.gamma * vol, above, sc.gamma * vol);

  const double hpow = std::pow(sc.H, pp - pm);
  add("H^{p+ - p-} <= 2", hpow <= 2.0, hpow, 2.0);

  const double pstar = critical_exponent(n, sc.sigma, pm);
  add("p+ < p-*", pp < pstar, pp, pstar);

  const double Rs = std::pow(sc.R, s);
  add("R^s <= delta H", Rs <= sc.delta * sc.H, Rs, sc.delta * sc.H);

  const GridFunction um = truncate_level(u, 0.0, TailSign::minus);
  const double tail = sup_tail(problem, um, grid.ball(sc.x0, 0.75 * sc.R, BallKind::open),
                               grid.outside_ball(sc.x0, sc.R), sc.x0, 1.0);
  const double dh = sc.delta * sc.H;
  const double tail_limit =
      std::pow(sc.R, -s * pp) * std::pow(dh, pp - 1.0) + std::pow(sc.R, -s * pm) * std::pow(dh, pm - 1.0);
  add("tail of u_- bounded by R^{-sp+}(delta H)^{p+-1} + R^{-sp-}(delta H)^{p--1}",
      tail <= tail_limit, tail, tail_limit);

  rep.hypotheses_hold = rep.unmet.empty();
  rep.min_quarter = INFINITY;
  for (auto i : quarter) rep.min_quarter = std::min(rep.min_quarter, u[i]);
  rep.conclusion_holds = rep.min_quarter >= rep.target;
  rep.pass = !rep.hypotheses_hold || rep.conclusion_holds;
  return rep;
}

GrowthCalibration calibrate_growth_delta(const NonlocalProblem& problem, const GridFunction& u,
                                         GrowthScenario scenario) {
  auto delta_ok = [&](double delta) {
    scenario.delta = delta;
    const auto rep = growth_lemma_check(problem, u, scenario);
    if (rep.hypotheses.size() < 7) return std::pair{false, rep};
    return std::pair{rep.hypotheses[5].holds && rep.hypotheses[6].holds, rep};
  };
  GrowthCalibration cal;
  auto [ok_hi, rep_hi] = delta_ok(0.125);
  if (!ok_hi) {
    cal.delta = 0.125;
    cal.report = rep_hi;
    return cal;
  }
  double lo = 0.0, hi = 0.125;
  for (int it = 0; it < 200 && hi - lo > 1e-10 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (delta_ok(mid).first ? hi : lo) = mid;
  }
  cal.found = true;
  cal.delta = hi;
  cal.report = delta_ok(hi).second;
  return cal;
}

SublevelReport sublevel_energy_check(const NonlocalProblem& problem, const GridFunction& u,
                                     const Point& x0, double R, double level, double sigma,
                                     double q, std::optional<double> C) {
  const Grid& grid = problem.grid();
  if (u.size() != grid.size()) throw ArgumentError("grid function size mismatch", "u");
  if (!(R > 0.0) || !grid.open_ball_in_omega(x0, R))
    throw GeometryError("B_R must lie inside the domain", "R");
  if (!(sigma > 0.0 && sigma < 1.0)) throw ArgumentError("sigma must lie in (0, 1)", "sigma");
  if (!(level > 0.0)) throw ArgumentError("level must be positive", "level");
  const auto ballR = grid.ball(x0, R, BallKind::open);
  const auto half = grid.ball(x0, 0.5 * R, BallKind::open);
  if (half.empty()) throw GeometryError("B_{R/2} contains no grid nodes", "R");
  SublevelReport rep;
  const auto ext = ball_extrema(problem, ballR);
  rep.p_minus = ext.p_minus;
  rep.p_plus = ext.p_plus;
  if (!(q >= 1.0 && q < rep.p_minus)) throw ArgumentError("q must lie in [1, p_-)", "q");

  const int n = grid.dim();
  const GridFunction w = truncate_level(u, level, TailSign::minus);
  for (auto i : half)
    for (auto j : half) {
      if (i == j) continue;
      const double dw = std::abs(w[i] - w[j]);
      if (dw == 0.0) continue;
      rep.lhs += grid.measure(i) * grid.measure(j) * std::pow(dw, q) /
                 std::pow(grid.distance(i, j), n + sigma * q);
    }
  for (auto i : ballR)
    if (u[i] < level) rep.sublevel_measure += grid.measure(i);
  const double A = rep.sublevel_measure;
  const double pp = rep.p_plus, pm = rep.p_minus;
  const double mx = A > 0.0 ? std::max({A, std::pow(A, 1.0 + q / pm - q / pp),
                                        std::pow(A, 1.0 + q / pp - q / pm)})
                            : 0.0;
  rep.shape = std::pow(level, q) * std::pow(R, -sigma * q) * mx;
  rep.C_required = rep.lhs == 0.0 ? 0.0 : (rep.shape > 0.0 ? rep.lhs / rep.shape : INFINITY);
  rep.C = C;
  if (C) {
    rep.rhs = *C * rep.shape;
    rep.pass = rep.lhs <= rep.rhs;
  } else {
    rep.pass = std::isfinite(rep.C_required);
  }
  return rep;
}

HolderFit holder_exponent_fit(const Grid& grid, const GridFunction& u, const Point& x0, double R,
                              int j_max) {
  if (u.size() != grid.size()) throw ArgumentError("grid function size mismatch", "u");
  if (!(R > 0.0) || !grid.open_ball_in_omega(x0, R))
    throw GeometryError("B_R must lie inside the domain", "R");
  if (j_max < 0) throw ArgumentError("jmax must be nonnegative", "jmax");
  HolderFit fit;
  fit.center = x0;
  fit.R = R;
  const double h = grid.min_spacing();
  for (int j = 0; j <= j_max; ++j) {
    const double r = R * std::pow(4.0, -j);
    if (r < h) break;
    const auto ball = grid.ball(x0, r, BallKind::closed);
    double lo = INFINITY, hi = -INFINITY;
    for (auto i : ball) {
      lo = std::min(lo, u[i]);
      hi = std::max(hi, u[i]);
    }
    fit.radii.push_back(r);
    fit.osc.push_back(ball.empty() ? 0.0 : hi - lo);
  }
  if (fit.radii.size() < 3)
    throw ResolutionError("fewer than three dyadic levels are resolvable on this grid");
  if (!(fit.osc.front() > 0.0)) return fit;

  std::vector<double> xs, ys;
  for (std::size_t j = 0; j < fit.osc.size(); ++j) {
    if (fit.osc[j] <= 0.0) continue;
    xs.push_back(std::log(fit.radii[j]));
    ys.push_back(std::log(fit.osc[j]));
  }
  if (xs.size() < 2) return fit;
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / ys.size();
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    sxx += (xs[k] - mx) * (xs[k] - mx);
    sxy += (xs[k] - mx) * (ys[k] - my);
  }
  fit.alpha = sxy / sxx;
  double ss = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const double e = ys[k] - (my + fit.alpha * (xs[k] - mx));
    ss += e * e;
  }
  fit.residual = std::sqrt(ss / xs.size());
  fit.defined = true;
  return fit;
}

}  // namespace fracplap
