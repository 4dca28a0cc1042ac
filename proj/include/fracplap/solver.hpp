#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fracplap/errors.hpp"
#include "fracplap/exponent_field.hpp"
#include "fracplap/exterior_data.hpp"
#include "fracplap/nonlocal_problem.hpp"

namespace fracplap {

struct SolveOptions {
  /// Stop once residual_norm(u) <= grad_tol.
  double grad_tol = 1e-10;
  /// Gradient evaluations allowed.
  int max_iter = 20000;
  /// First trial step, relative to 1 / max|gradient|.
  double step0 = 1.0;
  double backtrack = 0.5;
  double armijo = 1e-4;
  /// Descent steps on the p = 2 energy used to build the starting point.
  int warm_steps = 100;
  /// Overrides the starting point (interior values are taken from it).
  std::optional<GridFunction> initial;
};

struct SolveResult {
  GridFunction u;
  /// Gradient evaluations, including the initial one.
  int iterations = 0;
  double final_residual = 0.0;
  /// max |dF_h/du_i| over interior nodes.
  double final_gradient = 0.0;
  std::vector<double> energy_history;
  bool converged = false;
};

/// Raised when the iteration budget runs out or the line search stalls.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& message, SolveResult partial)
      : Error(ErrorCode::non_convergence, "solve.max_iter", message),
        partial_(std::move(partial)) {}
  const SolveResult& partial() const noexcept { return partial_; }

 private:
  SolveResult partial_;
};

/// Projected gradient descent on the interior values of u with the exterior
/// fixed to g. Steps are Barzilai-Borwein lengths safeguarded by Armijo
/// backtracking, so every accepted step lowers F_h.
SolveResult minimize(const NonlocalProblem& problem, const GridFunction& g,
                     const SolveOptions& opts = {});

struct SolveConfig {
  double s = 0.5;
  double sigma = 0.25;
  double q = 2.0;
  GridSpec grid;
  FieldSpec field;
  ExteriorSpec exterior;
  SolveOptions options;
  std::uint64_t seed = 0;
};

/// Validates the configuration, then builds grid, field and data and solves.
SolveResult minimize(const SolveConfig& config);

double residual_norm(const NonlocalProblem& problem, const GridFunction& u);

struct ComparisonReport {
  bool pass = true;
  double g_min = 0.0;
  double g_max = 0.0;
  std::size_t worst_node = 0;
  /// Largest distance of an interior value outside [g_min, g_max].
  double worst_excess = 0.0;
};

/// min over the collar of g - tol <= u_i <= max over the collar of g + tol at
/// every interior node.
ComparisonReport comparison_check(const Grid& grid, const SolveResult& result,
                                  const GridFunction& g, double tol = 1e-8);

}  // namespace fracplap
