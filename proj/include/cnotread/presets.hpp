#pragma once

#include "cnotread/channels.hpp"

namespace cnotread::presets {

/// Detector-count study: input |1> always present, detector loss 0.1, Pauli
/// error 0.001 on X and CNOT, ancillas present with probability 0.999.
inline ErrorParams fig2() {
  ErrorParams p;
  p.k1 = 1.0;
  p.alpha = 0.0;
  p.beta = 1.0;
  p.k2 = 0.999;
  p.p0 = 1.0;
  p.p_x = 0.001;
  p.p_c = 0.001;
  p.p_dloss = 0.1;
  return p;
}

/// Loss study: as fig2 plus gate loss 0.001 on X and CNOT. k1 is the swept axis.
inline ErrorParams fig3() {
  ErrorParams p = fig2();
  p.p_xloss = 0.001;
  p.p_closs = 0.001;
  return p;
}

/// Break-even solves: fig2 baseline with the given gate and detector errors and
/// no gate loss.
inline ErrorParams crossover(double p_c, double p_x, double p_dloss) {
  ErrorParams p = fig2();
  p.p_c = p_c;
  p.p_x = p_x;
  p.p_dloss = p_dloss;
  return p;
}

}  // namespace cnotread::presets
