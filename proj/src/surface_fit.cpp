#include "cnotread/surface_fit.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "cnotread/parallel.hpp"

namespace cnotread {

namespace {

constexpr double kMaxCondition = 1e10;

constexpr double kFitPcMin = 0.001;
constexpr double kFitPcMax = 0.05;
constexpr double kFitPxMin = 0.001;
constexpr double kFitPxMax = 0.1;
constexpr double kFitPdMin = 0.001;
constexpr double kFitPdMax = 0.1;

std::vector<double> linspace(double lo, double hi, int points) {
  if (points < 2) throw std::invalid_argument("grid needs at least 2 points per axis");
  std::vector<double> out;
  for (int i = 0; i < points; ++i) out.push_back(lo + (hi - lo) * i / (points - 1));
  out.back() = hi;
  return out;
}

bool has_crossing(const CrossoverResult& r) { return r.status != CrossoverStatus::kNoCrossover; }

}  // namespace

SurfaceCoefficients surface_basis(double p_c, double p_x, double p_D) {
  const double d2 = p_D * p_D;
  return {d2,  p_c * d2,  p_x * d2,  p_x * p_c * d2,  p_D, p_c * p_D,
          p_x * p_D, p_x * p_c * p_D, 1.0, p_c, p_x, p_x * p_c};
}

double evaluate_surface(double p_c, double p_x, double p_D, const SurfaceCoefficients& a) {
  // Same grouping as the printed formula, so repeated calls are bit-identical.
  const double d = p_D;
  const double bracket = (a[0] + a[1] * p_c + p_x * (a[2] + a[3] * p_c)) * d * d +
                         (a[4] + a[5] * p_c) * d + p_x * d * (a[6] + a[7] * p_c) + a[8] +
                         a[9] * p_c + p_x * (a[10] + a[11] * p_c);
  return 1.0 - bracket;
}

FitCoefficients fit_crossover_surface(std::span<const CrossoverResult> grid) {
  std::vector<const CrossoverResult*> used;
  for (const auto& r : grid) {
    if (has_crossing(r)) used.push_back(&r);
  }
  const int rows = static_cast<int>(used.size());
  if (rows < kSurfaceTerms) {
    throw std::invalid_argument("surface fit needs at least " + std::to_string(kSurfaceTerms) +
                                " crossing points, got " + std::to_string(rows));
  }

  Eigen::MatrixXd design(rows, kSurfaceTerms);
  Eigen::VectorXd target(rows);
  for (int i = 0; i < rows; ++i) {
    const auto row = surface_basis(used[i]->p_c, used[i]->p_x, used[i]->p_D);
    for (int j = 0; j < kSurfaceTerms; ++j) design(i, j) = row[j];
    target(i) = 1.0 - used[i]->p_L;
  }

  Eigen::VectorXd scale = design.colwise().norm().transpose();
  for (int j = 0; j < kSurfaceTerms; ++j) {
    if (scale(j) == 0.0) {
      throw std::invalid_argument("surface fit: basis column " + std::to_string(j) +
                                  " is identically zero on this grid");
    }
  }
  const Eigen::MatrixXd scaled = design * scale.cwiseInverse().asDiagonal();

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(scaled);
  const auto& sv = svd.singularValues();
  const double condition = sv(0) / sv(sv.size() - 1);
  if (!std::isfinite(condition) || condition > kMaxCondition) {
    throw std::invalid_argument("surface fit: design matrix is rank deficient (condition number " +
                                std::to_string(condition) + ")");
  }

  const Eigen::VectorXd solution =
      scaled.colPivHouseholderQr().solve(target).cwiseQuotient(scale);
  const Eigen::VectorXd residual = design * solution - target;

  FitCoefficients fit;
  for (int j = 0; j < kSurfaceTerms; ++j) fit.values[j] = solution(j);
  fit.residual_norm = residual.norm();
  fit.max_abs_residual = residual.cwiseAbs().maxCoeff();
  fit.condition_number = condition;
  fit.points_used = rows;
  return fit;
}

GridAxes default_fit_axes(int points) {
  return {linspace(kFitPcMin, kFitPcMax, points), linspace(kFitPxMin, kFitPxMax, points),
          linspace(kFitPdMin, kFitPdMax, points)};
}

std::vector<CrossoverResult> solve_grid(const GridAxes& axes, const CrossoverOptions& options,
                                        unsigned workers) {
  struct Point {
    double p_c, p_x, p_D;
  };
  std::vector<Point> points;
  for (double c : axes.p_c) {
    for (double x : axes.p_x) {
      for (double d : axes.p_D) points.push_back({c, x, d});
    }
  }
  return parallel_map<CrossoverResult>(
      points.size(),
      [&](std::size_t i) {
        return crossover_loss(points[i].p_c, points[i].p_x, points[i].p_D, options);
      },
      workers);
}

std::vector<CrossoverResult> solve_random_points(int count, std::uint64_t seed,
                                                 const CrossoverOptions& options,
                                                 unsigned workers) {
  std::mt19937_64 rng(seed);
  auto draw = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
  GridAxes points;
  for (int i = 0; i < count; ++i) {
    points.p_c.push_back(draw(kFitPcMin, kFitPcMax));
    points.p_x.push_back(draw(kFitPxMin, kFitPxMax));
    points.p_D.push_back(draw(kFitPdMin, kFitPdMax));
  }
  return parallel_map<CrossoverResult>(
      static_cast<std::size_t>(count),
      [&](std::size_t i) {
        return crossover_loss(points.p_c[i], points.p_x[i], points.p_D[i], options);
      },
      workers);
}

double max_prediction_error(const FitCoefficients& fit, std::span<const CrossoverResult> points) {
  double worst = 0.0;
  for (const auto& r : points) {
    if (!has_crossing(r)) continue;
    worst = std::max(worst, std::abs(evaluate_surface(r.p_c, r.p_x, r.p_D, fit.values) - r.p_L));
  }
  return worst;
}

}  // namespace cnotread
