#pragma once

// Break-even initial-qubit loss probability: the loss p_L = 1 - k1 above which
// the loss-detecting scheme 3 beats the first-click scheme 4.

#include "cnotread/channels.hpp"

namespace cnotread {

enum class CrossoverStatus {
  kFound,
  /// g = F(S3) - F(S4) vanishes at k1 = 1 and keeps one sign below it.
  kAtBoundary,
  /// g keeps one sign over the whole bracket.
  kNoCrossover,
};

struct CrossoverResult {
  double p_L = 0.0;
  double p_c = 0.0;
  double p_x = 0.0;
  double p_D = 0.0;
  int iterations = 0;
  double bracket_width = 0.0;
  CrossoverStatus status = CrossoverStatus::kFound;
  /// Sign of g that held when no crossing was found (+1: scheme 3 better).
  int sign = 0;
};

struct CrossoverOptions {
  int n_detectors = 4;
  double k1_lower = 0.8;
  double tolerance = 1e-6;  ///< bracket width in k1
  int max_iterations = 40;
};

/// Validity box of the fitted crossover surface.
inline constexpr double kMaxDetectorError = 0.1;
inline constexpr double kMaxXError = 0.1;
inline constexpr double kMaxCnotError = 0.05;

/// g(k1) = fidelity(S3) - fidelity(S4) at `params` with k1 replaced.
double crossover_gap(const ErrorParams& params, double k1, int n_detectors);

/// Solves g(k1) = 0 by bisection, taking the sign change closest to k1 = 1.
/// `base` supplies the fields that are not swept (k2, p0, input amplitudes,
/// gate loss); p_c, p_x and p_dloss are overwritten.
CrossoverResult crossover_loss(double p_c, double p_x, double p_D, const ErrorParams& base,
                               const CrossoverOptions& options = {});

/// As above, on the crossover preset baseline.
CrossoverResult crossover_loss(double p_c, double p_x, double p_D,
                               const CrossoverOptions& options = {});

}  // namespace cnotread
