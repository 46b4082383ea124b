#pragma once

#include <random>

#include "cnotread/channels.hpp"

namespace cnotread::fixtures {

/// Random single-mode density matrix of rank up to 3.
inline Mat3 random_mode_state(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Mat3 a;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) a(i, j) = Complex(g(rng), g(rng));
  }
  Mat3 rho = a * a.adjoint();
  return rho / rho.trace().real();
}

inline Mat9 random_pair_state(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Mat9 a;
  for (int i = 0; i < 9; ++i) {
    for (int j = 0; j < 9; ++j) a(i, j) = Complex(g(rng), g(rng));
  }
  Mat9 rho = a * a.adjoint();
  return rho / rho.trace().real();
}

/// Random valid error parameters with every probability at most `scale`
/// (presence/preparation probabilities at least 1 - scale).
inline ErrorParams random_params(std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ErrorParams p;
  p.k1 = 1.0 - scale * u(rng);
  p.k2 = 1.0 - scale * u(rng);
  p.p0 = 1.0 - scale * u(rng);
  const double theta = u(rng) * 3.141592653589793;
  const double phase = u(rng) * 6.283185307179586;
  p.alpha = std::cos(theta / 2.0);
  p.beta = std::polar(std::sin(theta / 2.0), phase);
  const double norm = std::sqrt(std::norm(p.alpha) + std::norm(p.beta));
  p.alpha /= norm;
  p.beta /= norm;
  p.p_x = scale * u(rng);
  p.p_c = scale * u(rng);
  p.p_xloss = scale * u(rng);
  p.p_closs = scale * u(rng);
  const double a = u(rng);
  const double b = u(rng) * (1.0 - a);
  p.closs_dist = {a, b, 1.0 - a - b};
  p.p_dloss = scale * u(rng);
  p.p_dflip = scale * u(rng);
  return p;
}

}  // namespace cnotread::fixtures
