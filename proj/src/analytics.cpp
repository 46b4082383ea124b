#include "cnotread/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace cnotread::analytics {

namespace {

void require_probability(double value, const char* name) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw std::invalid_argument(std::string(name) + " must lie in [0, 1], got " +
                                std::to_string(value));
  }
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double out = 1.0;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

void check_cm_args(double S, double K, double W, double T) {
  require_probability(S, "S");
  require_probability(K, "K");
  require_probability(W, "W");
  require_probability(T, "T");
}

}  // namespace

void StatModelParams::validate() const {
  require_probability(F, "F");
  require_probability(S, "S");
  require_probability(K, "K");
  require_probability(W, "W");
  require_probability(T, "T");
  require_probability(eta, "eta");
  require_probability(epsilon, "epsilon");
  require_probability(zeta, "zeta");
  if (M < 1) throw std::invalid_argument("M must be >= 1");
}

double deuar_munro_limit(double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    throw std::invalid_argument("epsilon must lie in (0, 1], got " + std::to_string(epsilon));
  }
  return 2.0 - 1.0 / epsilon;
}

double schaetz_pm(double F, int M, int m) {
  require_probability(F, "F");
  if (M < 0 || m < 0 || m > M + 1) {
    throw std::invalid_argument("schaetz_pm needs 0 <= m <= M+1, got m=" + std::to_string(m) +
                                " M=" + std::to_string(M));
  }
  return std::pow(F, m) * std::pow(1.0 - F, M + 1 - m) * binomial(M + 1, m);
}

double schaetz_majority(double F, int M) {
  if (M < 1) throw std::invalid_argument("M must be >= 1");
  double sum = 0.0;
  for (int m = 0; m <= M + 1; ++m) {
    // m > M/2 without rounding: 2m > M.
    if (2 * m > M) sum += schaetz_pm(F, M, m);
  }
  return sum;
}

double cm_correct_prob(double S, double K, double W, double T, int m) {
  check_cm_args(S, K, W, T);
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  const double flip = (1.0 - W) * (1.0 - T);
  const double keep = W + T * (1.0 - W);
  double sum = 0.0;
  for (int j = 0; j <= m / 2; ++j) {
    sum += binomial(m, m - 2 * j) * std::pow(flip, 2 * j) * std::pow(keep, m - 2 * j);
  }
  return S * K * sum;
}

double cm_majority(double S, double K, double W, double T, int n) {
  check_cm_args(S, K, W, T);
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  // dist[c][w]: probability of c correct and w wrong readings so far.
  std::vector<std::vector<double>> dist(n + 1, std::vector<double>(n + 1, 0.0));
  dist[0][0] = 1.0;
  const double present = S * K;
  for (int m = 1; m <= n; ++m) {
    const double correct = cm_correct_prob(S, K, W, T, m);
    const double wrong = present - correct;
    const double lost = 1.0 - present;
    std::vector<std::vector<double>> next(n + 1, std::vector<double>(n + 1, 0.0));
    for (int c = 0; c < m; ++c) {
      for (int w = 0; c + w < m; ++w) {
        const double p = dist[c][w];
        if (p == 0.0) continue;
        next[c + 1][w] += p * correct;
        next[c][w + 1] += p * wrong;
        next[c][w] += p * lost;
      }
    }
    dist = std::move(next);
  }
  double success = 0.0;
  for (int c = 0; c <= n; ++c) {
    for (int w = 0; c + w <= n; ++w) {
      if (c > w) success += dist[c][w];
    }
  }
  return success;
}

double cm_majority_sampled(double S, double K, double W, double T, int n, std::int64_t trials,
                           std::uint64_t seed) {
  check_cm_args(S, K, W, T);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double flip = (1.0 - W) * (1.0 - T);
  std::int64_t wins = 0;
  for (std::int64_t t = 0; t < trials; ++t) {
    int correct = 0;
    int wrong = 0;
    for (int m = 1; m <= n; ++m) {
      // Fresh CNOT history per detector: the m-th reading sees m independent
      // chances of a readout-visible flip.
      int flips = 0;
      for (int g = 0; g < m; ++g) flips += u(rng) < flip ? 1 : 0;
      if (u(rng) >= S * K) continue;
      (flips % 2 == 0 ? correct : wrong) += 1;
    }
    if (correct > wrong) ++wins;
  }
  return static_cast<double>(wins) / static_cast<double>(trials);
}

double r_ratio(double zeta, double k1) {
  if (!(zeta > 0.0 && zeta <= 1.0)) {
    throw std::invalid_argument("zeta must lie in (0, 1], got " + std::to_string(zeta));
  }
  require_probability(k1, "k1");
  if (k1 == 1.0) return kRatioSaturated;
  return ((1.0 - zeta) * k1) / (zeta * (1.0 - k1));
}

TwirlParams twirl_from_cnot_error(double p_c) {
  require_probability(p_c, "p_c");
  return {1.0 - p_c, 7.0 / 15.0};
}

}  // namespace cnotread::analytics
