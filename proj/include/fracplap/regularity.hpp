#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fracplap/nonlocal_problem.hpp"

namespace fracplap {

// ---------------------------------------------------------------------------
// Algebraic inequality for the truncated test function

struct AlgebraicCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double C = 0.0;  // (p+/p-) (2 p+)^{p+ - 1}
  bool holds = true;
};

/// lhs = |a-b|^{p-2}(a-b)(a t1^{p+} - b t2^{p+}),
/// rhs = |a-b|^p max(t1,t2)^{p+} / 2 - C max(a,b)^p |t1-t2|^p.
AlgebraicCheck algebraic_inequality_check(double a, double b, double tau1, double tau2, double p,
                                          double p_minus, double p_plus);

/// (p+/p-) (2 p+)^{p+ - 1}.
double algebraic_constant(double p_minus, double p_plus);

// ---------------------------------------------------------------------------
// Energy estimate for level truncations

struct CaccioppoliReport {
  double k = 0.0;
  double r = 0.0;
  double R = 0.0;
  double p_minus = 0.0;  // over B_R x B_R
  double p_plus = 0.0;
  double lhs_modular = 0.0;  // Gagliardo modular of w_+ on B_r
  double lhs_cross = 0.0;    // sum_{B_r} w_+(x) sum_{B_R} w_-(y)^{p-1} / |x-y|^{n+sp}
  double rhs_local = 0.0;    // sum_{B_R x B_R} (w_+(x)/(R-r))^p / |x-y|^{n-(1-s)p}
  double rhs_tail = 0.0;     // weighted sup-tail of w_+ times sum_{B_R} w_+
  double C_explicit = 0.0;
  double C_empirical = 0.0;  // lhs / rhs
  /// Discrete subsolution defect: max(0, E(u, w_+ eta^{p+})) scaled by the
  /// coercivity constant, plus round-off allowance.
  double slack = 0.0;
  bool satisfied = true;
};

/// Evaluates both sides of the truncated energy estimate at level k on
/// B_r(x0) inside B_R(x0). Pairs on the left are restricted to those that
/// interact in the discrete energy.
CaccioppoliReport caccioppoli_report(const NonlocalProblem& problem, const GridFunction& u,
                                     const Point& x0, double r, double R, double k);

/// Linearly interpolated quantiles of u over the open ball B_R(x0).
std::vector<double> ball_quantiles(const Grid& grid, const GridFunction& u, const Point& x0,
                                   double R, const std::vector<double>& fractions);

// ---------------------------------------------------------------------------
// Geometric iteration

struct DeGiorgiParams {
  double C = 1.0;
  double b = 2.0;
  std::vector<double> betas{1.0};  // non-increasing, positive
  double Y0 = 0.5;
};

struct DeGiorgiResult {
  std::vector<long double> Y;
  std::vector<long double> bound;  // C^{-1/bN} b^{-1/bN^2 - j/bN}
  long double threshold = 0.0L;    // min{C^{-1/bN} b^{-1/bN^2}, C^{-1/b1}}
  bool threshold_met = false;
  /// Only meaningful when the threshold is met.
  bool bound_holds = false;
  /// max_j (Y_j - bound_j) / bound_j.
  long double max_relative_excess = 0.0L;
};

/// Runs Y_{j+1} = C b^j max_i Y_j^{1 + beta_i} for j < j_max in extended
/// precision and compares against the closed-form decay bound.
DeGiorgiResult degiorgi_iterate(const DeGiorgiParams& params, int j_max);

// ---------------------------------------------------------------------------
// Supremum bound

struct SupBoundReport {
  bool applicable = false;
  std::string reason;
  double R = 0.0;  // radius actually used
  double p_minus = 0.0;
  double p_plus = 0.0;
  double p_star = 0.0;  // n p- / (n - sigma p-), infinite when sigma p- >= n
  double q = 0.0;
  double lhs_sup = 0.0;     // max u over B_{R/2}
  double average = 0.0;     // mean of u_+^{p+} over B_R
  double local_term = 0.0;  // max{avg^{1/p+}, avg^{(q-p-)/(p-(q-p+))}}
  double tail = 0.0;        // sup_{B_R} sum_{outside B_{R/2}} u_+^{p-1} / |y-x0|^{n+sp}
  double tail_term = 0.0;   // tail^{1/(p+ - 1)}
  double C = 1.0;
  double rhs_bound = 0.0;   // C local_term + tail_term + 1
  double C_required = 0.0;  // smallest C making the bound hold
  double C_local = 0.0;     // lhs_sup / local_term
  bool pass = true;
};

/// Shrinks R from `R0` by factors of 0.9 until the ball, exponent and q
/// conditions hold, then evaluates both sides of the supremum estimate.
SupBoundReport sup_bound_check(const NonlocalProblem& problem, const GridFunction& u,
                               const Point& x0, double R0, double sigma, double q,
                               double C = 1.0);

// ---------------------------------------------------------------------------
// Growth lemma and sublevel energy

struct GrowthScenario {
  double H = 1.0;
  double delta = 0.125;
  double gamma = 0.5;
  double R = 0.5;
  Point x0{0.0, 0.0};
  double sigma = 0.25;
  double q = 1.0;
};

struct Hypothesis {
  std::string name;
  bool holds = false;
  double measured = 0.0;
  double limit = 0.0;
};

struct GrowthReport {
  std::vector<Hypothesis> hypotheses;
  bool hypotheses_hold = false;
  double min_quarter = 0.0;  // min u over B_{R/4}
  double target = 0.0;       // delta H
  bool conclusion_holds = false;
  /// False only when every hypothesis holds and the conclusion fails.
  bool pass = true;
  std::vector<std::string> unmet;
};

/// Never throws on hypothesis failure: failing hypotheses are listed.
GrowthReport growth_lemma_check(const NonlocalProblem& problem, const GridFunction& u,
                                const GrowthScenario& scenario);

struct GrowthCalibration {
  bool found = false;
  double delta = 0.0;
  GrowthReport report;
};

/// Smallest delta in (0, 1/8] (to relative 1e-10) meeting the delta-dependent
/// hypotheses R^s <= delta H and the tail bound; other hypotheses are not
/// affected by delta.
GrowthCalibration calibrate_growth_delta(const NonlocalProblem& problem, const GridFunction& u,
                                         GrowthScenario scenario);

struct SublevelReport {
  double lhs = 0.0;    // [(u - l)_-]^q in W^{sigma,q}(B_{R/2})
  double shape = 0.0;  // l^q R^{-sigma q} max{|A|, |A|^{1+q/p- - q/p+}, |A|^{1+q/p+ - q/p-}}
  double sublevel_measure = 0.0;
  double p_minus = 0.0;
  double p_plus = 0.0;
  double C_required = 0.0;
  std::optional<double> C;
  double rhs = 0.0;  // C * shape when C is given
  bool pass = true;
};

/// A = B_R cap {u < l}, strict. Without C the check only requires a finite
/// C_required.
SublevelReport sublevel_energy_check(const NonlocalProblem& problem, const GridFunction& u,
                                     const Point& x0, double R, double level, double sigma,
                                     double q, std::optional<double> C = {});

// ---------------------------------------------------------------------------
// Oscillation decay

struct HolderFit {
  Point center{};
  double R = 0.0;
  std::vector<double> radii;  // 4^{-j} R, resolvable levels only
  std::vector<double> osc;
  double alpha = 0.0;
  double residual = 0.0;  // RMS of the log-log fit
  bool defined = false;
};

/// osc_j = max - min of u over the closed ball of radius 4^{-j} R for
/// j = 0..j_max while 4^{-j} R >= h; alpha is the least-squares slope of
/// log osc_j against log radius over the positive oscillations.
HolderFit holder_exponent_fit(const Grid& grid, const GridFunction& u, const Point& x0, double R,
                              int j_max);

}  // namespace fracplap
