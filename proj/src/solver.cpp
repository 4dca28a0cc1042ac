#include "fracplap/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace fracplap {

namespace {

struct DescentOutcome {
  bool converged = false;
  bool stalled = false;
};

double max_abs_interior(const Grid& grid, const GridFunction& v) {
  double m = 0.0;
  for (std::size_t i : grid.interior()) m = std::max(m, std::abs(v[i]));
  return m;
}

// Runs until the residual reaches tol, the line search stalls, or `budget`
// gradient evaluations have been spent. `res.iterations` counts evaluations.
DescentOutcome descend(const NonlocalProblem& prob, const SolveOptions& opts, double tol,
                       int budget, SolveResult& res) {
  const Grid& grid = prob.grid();
  const auto interior = grid.interior();
  GridFunction& u = res.u;
  GridFunction grad = prob.gradient(u);
  ++res.iterations;
  double F = prob.energy(u);
  res.energy_history.push_back(F);
  res.final_gradient = max_abs_interior(grid, grad);
  res.final_residual = 0.5 * res.final_gradient;
  if (res.final_residual <= tol) return {true, false};

  double alpha = opts.step0 / res.final_gradient;
  GridFunction trial = u;
  GridFunction grad_new;
  while (res.iterations < budget) {
    double gg = 0.0;
    for (std::size_t i : interior) gg += grad[i] * grad[i];

    bool accepted = false;
    double t = alpha;
    double F_new = F;
    for (int k = 0; k < 80; ++k) {
      for (std::size_t i : interior) trial[i] = u[i] - t * grad[i];
      F_new = prob.energy(trial);
      if (F_new <= F - opts.armijo * t * gg + 1e-14 * std::abs(F)) {
        accepted = true;
        break;
      }
      t *= opts.backtrack;
    }
    if (!accepted) return {false, true};

    grad_new = prob.gradient(trial);
    ++res.iterations;
    double ss = 0.0, sy = 0.0;
    for (std::size_t i : interior) {
      const double si = trial[i] - u[i];
      const double yi = grad_new[i] - grad[i];
      ss += si * si;
      sy += si * yi;
    }
    std::swap(u, trial);
    std::swap(grad, grad_new);
    F = F_new;
    res.energy_history.push_back(F);
    res.final_gradient = max_abs_interior(grid, grad);
    res.final_residual = 0.5 * res.final_gradient;
    if (res.final_residual <= tol) return {true, false};
    alpha = (sy > 0.0 && ss > 0.0) ? ss / sy : 2.0 * t;
    alpha = std::clamp(alpha, 1e-30, 1e30);
  }
  return {false, false};
}

}  // namespace

SolveResult minimize(const NonlocalProblem& problem, const GridFunction& g,
                     const SolveOptions& opts) {
  const Grid& grid = problem.grid();
  if (g.size() != grid.size()) throw ArgumentError("exterior data size mismatch", "exterior");
  for (std::size_t j : grid.exterior())
    if (!std::isfinite(g[j])) throw ArgumentError("exterior data must be finite", "exterior");
  if (!(opts.grad_tol > 0.0)) throw ArgumentError("grad_tol must be positive", "solve.grad_tol");
  if (!(opts.step0 > 0.0)) throw ArgumentError("step0 must be positive", "solve.step0");
  if (!(opts.backtrack > 0.0 && opts.backtrack < 1.0))
    throw ArgumentError("backtracking factor must lie in (0, 1)", "solve.backtrack");
  if (!(opts.armijo > 0.0 && opts.armijo < 1.0))
    throw ArgumentError("sufficient-decrease constant must lie in (0, 1)", "solve.armijo");
  if (opts.max_iter < 1) throw ArgumentError("max_iter must be positive", "solve.max_iter");

  SolveResult res;
  if (opts.initial) {
    if (opts.initial->size() != grid.size())
      throw ArgumentError("initial guess size mismatch", "initial");
    res.u = *opts.initial;
    for (std::size_t j : grid.exterior()) res.u[j] = g[j];
  } else {
    double lo = INFINITY, hi = -INFINITY;
    for (std::size_t j : grid.exterior()) {
      lo = std::min(lo, g[j]);
      hi = std::max(hi, g[j]);
    }
    if (lo == hi) {
      res.u.assign(grid.size(), lo);
    } else {
      res.u = problem.exterior_average(g);
      if (opts.warm_steps > 0) {
        const bool quadratic = problem.field().is_constant() && problem.field().p_min() == 2.0;
        SolveResult warm;
        warm.u = std::move(res.u);
        if (quadratic) {
          descend(problem, opts, opts.grad_tol, opts.warm_steps, warm);
        } else {
          const NonlocalProblem lin(grid, ExponentField::constant(2.0), problem.s());
          descend(lin, opts, opts.grad_tol, opts.warm_steps, warm);
        }
        res.u = std::move(warm.u);
      }
    }
  }

  const auto out = descend(problem, opts, opts.grad_tol, opts.max_iter, res);
  res.converged = out.converged;
  if (!out.converged) {
    const std::string why = out.stalled ? "line search stalled" : "iteration limit reached";
    throw ConvergenceError(why + " with residual " + std::to_string(res.final_residual) +
                               " above tolerance " + std::to_string(opts.grad_tol),
                           std::move(res));
  }
  return res;
}

SolveResult minimize(const SolveConfig& config) {
  if (!(config.s > 0.0 && config.s < 1.0)) throw ArgumentError("s must lie in (0, 1)", "solve.s");
  if (!(config.sigma > 0.0 && config.sigma < config.s))
    throw ArgumentError("sigma must lie in (0, s)", "solve.sigma");
  Grid grid = Grid::build(config.grid);
  const GridFunction g = make_exterior(grid, config.exterior);
  const NonlocalProblem problem(std::move(grid), make_field(config.field), config.s);
  return minimize(problem, g, config.options);
}

double residual_norm(const NonlocalProblem& problem, const GridFunction& u) {
  return problem.residual_norm(u);
}

ComparisonReport comparison_check(const Grid& grid, const SolveResult& result,
                                  const GridFunction& g, double tol) {
  if (g.size() != grid.size() || result.u.size() != grid.size())
    throw ArgumentError("grid function size mismatch", "u");
  ComparisonReport rep;
  rep.g_min = INFINITY;
  rep.g_max = -INFINITY;
  for (std::size_t j : grid.exterior()) {
    rep.g_min = std::min(rep.g_min, g[j]);
    rep.g_max = std::max(rep.g_max, g[j]);
  }
  for (std::size_t i : grid.interior()) {
    const double excess = std::max(rep.g_min - result.u[i], result.u[i] - rep.g_max);
    if (excess > rep.worst_excess) {
      rep.worst_excess = excess;
      rep.worst_node = i;
    }
  }
  rep.pass = rep.worst_excess <= tol;
  return rep;
}

}  // namespace fracplap
