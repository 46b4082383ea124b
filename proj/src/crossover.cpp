#include "cnotread/crossover.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "cnotread/presets.hpp"
#include "cnotread/schemes.hpp"

namespace cnotread {

namespace {

// |g| below this at k1 = 1 counts as an exact zero there.
constexpr double kZeroGap = 1e-9;

void check_box(double p_c, double p_x, double p_D) {
  auto check = [](double v, double hi, const char* name) {
    if (!(v >= 0.0 && v <= hi)) {
      throw std::invalid_argument(std::string(name) + " must lie in [0, " + std::to_string(hi) +
                                  "], got " + std::to_string(v));
    }
  };
  check(p_c, kMaxCnotError, "p_c");
  check(p_x, kMaxXError, "p_x");
  check(p_D, kMaxDetectorError, "p_D");
}

// Loss probabilities probed from k1 = 1 downwards before bisecting.
std::vector<double> scan_ladder(double max_loss) {
  std::vector<double> ladder = {0.0};
  for (double loss = 1e-6; loss < max_loss; loss *= 2.0) ladder.push_back(loss);
  ladder.push_back(max_loss);
  return ladder;
}

}  // namespace

double crossover_gap(const ErrorParams& params, double k1, int n_detectors) {
  ErrorParams p = params;
  p.k1 = k1;
  const double f3 = run_scheme({Scheme::kS3, n_detectors, 0}, p).fidelity;
  const double f4 = run_scheme({Scheme::kS4, n_detectors, 0}, p).fidelity;
  return f3 - f4;
}

CrossoverResult crossover_loss(double p_c, double p_x, double p_D, const ErrorParams& base,
                               const CrossoverOptions& options) {
  check_box(p_c, p_x, p_D);
  ErrorParams params = base;
  params.p_c = p_c;
  params.p_x = p_x;
  params.p_dloss = p_D;
  params.validate();

  CrossoverResult result;
  result.p_c = p_c;
  result.p_x = p_x;
  result.p_D = p_D;

  auto gap_at_loss = [&](double loss) { return crossover_gap(params, 1.0 - loss, options.n_detectors); };

  const std::vector<double> ladder = scan_ladder(1.0 - options.k1_lower);
  const double g_top = gap_at_loss(0.0);
  double lo_loss = 0.0;
  double g_lo = g_top;
  double hi_loss = -1.0;
  for (std::size_t i = 1; i < ladder.size(); ++i) {
    const double g = gap_at_loss(ladder[i]);
    if (std::signbit(g) != std::signbit(g_lo)) {
      hi_loss = ladder[i];
      break;
    }
    lo_loss = ladder[i];
    g_lo = g;
  }

  if (hi_loss < 0.0) {
    result.sign = g_lo > 0.0 ? 1 : -1;
    if (std::abs(g_top) <= kZeroGap) {
      result.status = CrossoverStatus::kAtBoundary;
      result.p_L = 0.0;
    } else {
      result.status = CrossoverStatus::kNoCrossover;
      result.p_L = 1.0 - options.k1_lower;
    }
    result.bracket_width = 0.0;
    return result;
  }

  // A zero gap at k1 = 1 with the sign flipping right below it is a boundary root.
  if (lo_loss == 0.0 && std::abs(g_top) <= kZeroGap) {
    result.status = CrossoverStatus::kAtBoundary;
    result.p_L = 0.0;
    return result;
  }

  int iterations = 0;
  while (hi_loss - lo_loss > options.tolerance && iterations < options.max_iterations) {
    const double mid = 0.5 * (lo_loss + hi_loss);
    const double g = gap_at_loss(mid);
    if (std::signbit(g) == std::signbit(g_lo)) {
      lo_loss = mid;
      g_lo = g;
    } else {
      hi_loss = mid;
    }
    ++iterations;
  }
  result.status = CrossoverStatus::kFound;
  result.p_L = 0.5 * (lo_loss + hi_loss);
  result.iterations = iterations;
  result.bracket_width = hi_loss - lo_loss;
  return result;
}

CrossoverResult crossover_loss(double p_c, double p_x, double p_D, const CrossoverOptions& options) {
  return crossover_loss(p_c, p_x, p_D, presets::crossover(p_c, p_x, p_D), options);
}

}  // namespace cnotread
