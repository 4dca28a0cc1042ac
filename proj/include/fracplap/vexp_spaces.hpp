#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "fracplap/exponent_field.hpp"
#include "fracplap/grid.hpp"

namespace fracplap {

enum class ModularKind { lebesgue, gagliardo, combined };

const char* to_string(ModularKind kind) noexcept;

struct ModularResult {
  double value = 0.0;
  ModularKind kind = ModularKind::lebesgue;
};

struct NormResult {
  double value = 0.0;
  double lo = 0.0;  // final bracket
  double hi = 0.0;
  int iterations = 0;  // bisection steps
};

using Region = std::span<const std::size_t>;

/// p(x, x) at every grid node.
std::vector<double> diagonal_exponent(const ExponentField& field, const Grid& grid);

/// Sum over the region of m_i |u_i|^{pbar(x_i)}.
ModularResult lebesgue_modular(const GridFunction& u, const ExponentField& field,
                               const Grid& grid, Region region);
/// Same with an explicit per-node exponent (indexed by node).
ModularResult lebesgue_modular(const GridFunction& u, std::span<const double> pbar,
                               const Grid& grid, Region region);

/// Sum over i in A, j in B, i != j of m_i m_j |u_i - u_j|^p / |x_i - x_j|^{n+sp}.
ModularResult gagliardo_modular(const GridFunction& u, const ExponentField& field, double s,
                                const Grid& grid, Region a, Region b);

/// Lebesgue modular of the diagonal exponent plus the Gagliardo modular on
/// region x region.
ModularResult combined_modular(const GridFunction& u, const ExponentField& field, double s,
                               const Grid& grid, Region region);

using ModularFn = std::function<double(const GridFunction&)>;

/// inf { lambda > 0 : modular(u / lambda) <= 1 }. The bracket is found by
/// doubling or halving from 1, then bisected until its relative width is at
/// most tol and modular(u / value) is within tol of 1 (200 steps at most).
NormResult luxemburg_norm(const ModularFn& modular, const GridFunction& u, double tol = 1e-10);

NormResult lebesgue_norm(const GridFunction& u, const ExponentField& field, const Grid& grid,
                         Region region, double tol = 1e-10);
NormResult lebesgue_norm(const GridFunction& u, std::span<const double> pbar, const Grid& grid,
                         Region region, double tol = 1e-10);
NormResult sobolev_seminorm(const GridFunction& u, const ExponentField& field, double s,
                            const Grid& grid, Region region, double tol = 1e-10);
/// Luxemburg norm of the combined modular.
NormResult combined_norm(const GridFunction& u, const ExponentField& field, double s,
                         const Grid& grid, Region region, double tol = 1e-10);

struct HolderProductResult {
  double integral = 0.0;  // sum m_i |u_i v_i|
  double u_norm = 0.0;    // in L^{pbar}
  double v_norm = 0.0;    // in L^{pbar'}
  double ratio = 0.0;     // integral / (2 u_norm v_norm)
  bool pass = true;
};

/// Checks sum |u v| <= 2 ||u||_{pbar} ||v||_{pbar'} with pbar' = pbar/(pbar-1).
HolderProductResult holder_product_check(const GridFunction& u, const GridFunction& v,
                                         std::span<const double> pbar, const Grid& grid,
                                         Region region);

struct EmbeddingResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double C = 0.0;            // explicit constant
  double C_empirical = 0.0;  // smallest constant making lhs <= C * (rhs / C)
  double seminorm = 0.0;     // [u] on the region
  double diameter = 0.0;
  double p_minus = 0.0;
  double p_plus = 0.0;
  bool pass = true;
};

/// Compares (sum_{A x region} |u_i - u_j|^q / |x_i - x_j|^{n + sigma q})^{1/q}
/// with the bound C max{X^a, X^b} [u], where X = |A| d^{(s-sigma) p+ q/(p+ - q)},
/// a = (p+ - q)/(p+ q), b = (p- - q)/(p- q) and
/// C = 2^{1/q} max{K^a, K^b}, K = (p+ - q)|S^{n-1}| / ((s - sigma) p+ q).
/// The exponent extrema are taken over A x region. d defaults to the
/// diameter of the union of the region's cells and must not exceed 1.
EmbeddingResult embedding_bound(const GridFunction& u, const ExponentField& field, double s,
                                double sigma, double q, const Grid& grid, Region a,
                                Region region, std::optional<double> diameter = {},
                                double tol = 1e-10);

}  // namespace fracplap
