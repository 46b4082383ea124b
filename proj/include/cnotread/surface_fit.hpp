#pragma once

// Least-squares fit of the break-even loss surface p_L(p_c, p_x, p_D) on a
// basis that is linear in the gate errors and quadratic in the detector error.
//
// The fitted quantity is the bracket B = 1 - p_L, expanded as
//
//   B = (a0 + a1 Pc + Px (a2 + a3 Pc)) PD^2
//     + (a4 + a5 Pc) PD + Px PD (a6 + a7 Pc)
//     + a8 + a9 Pc + Px (a10 + a11 Pc)

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "cnotread/crossover.hpp"

namespace cnotread {

inline constexpr int kSurfaceTerms = 12;

using SurfaceCoefficients = std::array<double, kSurfaceTerms>;

/// Published coefficients of the break-even surface.
inline constexpr SurfaceCoefficients kPublishedSurface = {
    0.0128122, -0.575681, -0.656495, 3.75622,  -0.00117864, 0.198512,
    0.115926,  -0.496572, 0.99986,   -0.203882, -0.13992,   0.41898,
};

struct FitCoefficients {
  SurfaceCoefficients values{};
  double residual_norm = 0.0;
  double max_abs_residual = 0.0;
  double condition_number = 0.0;
  int points_used = 0;
};

/// Basis row at (p_c, p_x, p_D), in coefficient order.
SurfaceCoefficients surface_basis(double p_c, double p_x, double p_D);

/// 1 - B(p_c, p_x, p_D). Defaults to the published coefficients.
double evaluate_surface(double p_c, double p_x, double p_D,
                        const SurfaceCoefficients& coeffs = kPublishedSurface);

/// Published surface evaluated directly.
inline double evaluate_published_surface(double p_c, double p_x, double p_D) {
  return evaluate_surface(p_c, p_x, p_D, kPublishedSurface);
}

/// Ordinary least squares over crossover results. Points without a crossing
/// are skipped. Throws std::invalid_argument when fewer points than terms
/// remain or the column-scaled design matrix is numerically rank deficient.
FitCoefficients fit_crossover_surface(std::span<const CrossoverResult> grid);

struct GridAxes {
  std::vector<double> p_c;
  std::vector<double> p_x;
  std::vector<double> p_D;
};

/// `points` evenly spaced values per axis over p_c in [0.001, 0.05],
/// p_x in [0.001, 0.1], p_D in [0.001, 0.1].
GridAxes default_fit_axes(int points);

/// Crossover solves on the full product grid, ordered p_c-major then p_x, p_D.
std::vector<CrossoverResult> solve_grid(const GridAxes& axes, const CrossoverOptions& options = {},
                                        unsigned workers = 0);

/// Crossover solves at `count` uniformly random points inside the fit box.
std::vector<CrossoverResult> solve_random_points(int count, std::uint64_t seed,
                                                 const CrossoverOptions& options = {},
                                                 unsigned workers = 0);

/// max |fit(p) - p_L| over points with a crossing.
double max_prediction_error(const FitCoefficients& fit, std::span<const CrossoverResult> points);

}  // namespace cnotread
