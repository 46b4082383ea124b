#pragma once

// Closed-form baselines for repeated CNOT readout: the copier limit of Deuar
// and Munro, the Schaetz et al. majority formula, its lossy-CNOT
// generalization, and the approximate loss/error ratio R.

#include <cstdint>
#include <limits>

namespace cnotread::analytics {

/// Parameters of the independent-error statistical model.
struct StatModelParams {
  double F = 1.0;        ///< detection probability (Schaetz model)
  int M = 1;             ///< measurement count (Schaetz model)
  double S = 1.0;        ///< second qubit present
  double K = 1.0;        ///< detector works
  double W = 1.0;        ///< CNOT has no error
  double T = 0.0;        ///< a CNOT error is Z-type, invisible to the readout
  double eta = 1.0;      ///< detector efficiency (copier model)
  double epsilon = 1.0;  ///< copier error (copier model)
  double zeta = 1.0;     ///< per-gate success probability

  void validate() const;
};

/// Limiting efficiency 2 - 1/epsilon. Negative values are returned as is.
double deuar_munro_limit(double epsilon);

/// F^m (1-F)^(M+1-m) (M+1)! / (m! (M+1-m)!), for 0 <= m <= M+1.
double schaetz_pm(double F, int M, int m);

/// Sum of schaetz_pm over m > M/2.
double schaetz_majority(double F, int M);

/// Probability that the m-th detector reads correctly when each preceding
/// CNOT independently flips the readout with probability (1-W)(1-T).
double cm_correct_prob(double S, double K, double W, double T, int m);

/// Majority vote over n detectors with per-detector outcomes
/// correct / incorrect / lost drawn independently; lost readings are ignored
/// and ties count as failure.
double cm_majority(double S, double K, double W, double T, int n);

/// Sampling estimate of cm_majority from the same independent model.
double cm_majority_sampled(double S, double K, double W, double T, int n, std::int64_t trials,
                           std::uint64_t seed);

inline constexpr double kRatioSaturated = std::numeric_limits<double>::infinity();

/// R = (1 - zeta) k1 / (zeta (1 - k1)); saturates to +inf at k1 = 1.
double r_ratio(double zeta, double k1);

/// (W, T) matched to the correlated CNOT Pauli channel with error p_c:
/// W = 1 - p_c and T = 7/15, the share of Pauli pairs whose ancilla factor is
/// I or Z.
struct TwirlParams {
  double W;
  double T;
};
TwirlParams twirl_from_cnot_error(double p_c);

}  // namespace cnotread::analytics
