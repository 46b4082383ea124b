#pragma once

// Error model for the readout-amplification circuits: Pauli channels for the
// X and CNOT gates, gate loss, state preparation and the detector.

#include <array>
#include <vector>

#include "cnotread/qutrit.hpp"

namespace cnotread {

/// Which mode(s) a lossy CNOT drops. Weights must sum to one.
struct CnotLossDistribution {
  double control = 0.5;
  double target = 0.5;
  double both = 0.0;

  bool operator==(const CnotLossDistribution&) const = default;
};

/// Every probability of the error model plus the input amplitudes.
///
/// Defaults describe an error-free run on the input |1>.
struct ErrorParams {
  double k1 = 1.0;  ///< initial qubit present
  double k2 = 1.0;  ///< ancilla present
  double p0 = 1.0;  ///< ancilla correctly prepared in |0>
  Complex alpha{0.0, 0.0};
  Complex beta{1.0, 0.0};
  double p_x = 0.0;      ///< Pauli error in the X gate
  double p_c = 0.0;      ///< Pauli error in the CNOT gate
  double p_xloss = 0.0;  ///< loss in the X gate
  double p_closs = 0.0;  ///< loss in the CNOT gate
  CnotLossDistribution closs_dist;
  double p_dloss = 0.0;  ///< detector loses the photon
  double p_dflip = 0.0;  ///< detector records the wrong bit

  bool operator==(const ErrorParams&) const = default;

  /// Throws std::invalid_argument naming the first offending field.
  void validate() const;
};

/// Single-mode input state k1|psi><psi| + (1-k1)|L><L|.
Mat3 input_qubit_state(const ErrorParams& params);

/// diag(k2 p0, k2 (1-p0), 1-k2).
DensityMatrix prepare_ancilla(const ErrorParams& params);

/// Input qubit (x) freshly prepared ancilla.
DensityMatrix prepare_input(const ErrorParams& params);

// Kraus sets. Each set is complete on the full three-level space.

/// sigma_x K_i for the four Pauli-error operators K_i of the X gate.
std::vector<Mat3> x_gate_kraus(double p_x);

/// C L_i for the sixteen correlated Pauli-pair operators of the CNOT gate.
std::vector<Mat9> cnot_kraus(double p_c);

/// Replacement channel: with probability p_loss the mode is swapped for |L>.
std::vector<Mat3> mode_loss_kraus(double p_loss);

/// Gate-loss Kraus set for the CNOT, split over control/target/both.
std::vector<Mat9> cnot_loss_kraus(double p_loss, const CnotLossDistribution& dist);

Mat3 apply_kraus(const Mat3& rho, const std::vector<Mat3>& ops);
Mat9 apply_kraus(const Mat9& rho, const std::vector<Mat9>& ops);

/// Noisy X on a single-mode state: Pauli-error channel, then gate loss.
Mat3 x_gate_channel(const Mat3& rho, double p_x, double p_xloss);
/// Noisy X on `mode` (1 or 2) of a two-mode state, or on a single-mode state.
DensityMatrix x_gate_channel(const DensityMatrix& rho, double p_x, double p_xloss, int mode = 1);

/// Noisy CNOT (mode 1 controls mode 2): Pauli-pair channel, then gate loss.
Mat9 cnot_channel(const Mat9& rho, double p_c, double p_closs, const CnotLossDistribution& dist);
DensityMatrix cnot_channel(const DensityMatrix& rho, double p_c, double p_closs,
                           const CnotLossDistribution& dist);

enum class Outcome { kZero, kOne, kNoClick };

const char* to_string(Outcome outcome);

struct DetectorBranch {
  Outcome outcome;
  double probability;
  DensityMatrix state;
};

/// Detector on one mode. Returns only branches with nonzero probability, in
/// the order Zero, One, NoClick. Loss erases the record after projection; a
/// flip mislabels the record without touching the projected state.
std::vector<DetectorBranch> detector_measure(const DensityMatrix& rho, int mode, double p_dloss,
                                             double p_dflip);

/// Detector on mode 2 followed by tracing mode 2 out. Returns unnormalized
/// mode-1 states indexed by Outcome; each trace is the branch probability
/// times the trace of `rho`.
std::array<Mat3, 3> measure_ancilla_and_discard(const Mat9& rho, double p_dloss, double p_dflip);

}  // namespace cnotread
