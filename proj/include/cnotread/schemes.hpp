#pragma once

// The five CNOT-chain readout schemes and their decoding.
//
//   S1  majority vote over n readings
//   S2  majority vote with an X gate on the measured qubit between CNOTs
//   S3  majority vote with a single X gate after n/2 readings
//   S4  first click wins
//   S5  first click, X gate, second click; equal readings mean loss
//
// Every round prepares a fresh ancilla, applies a noisy CNOT from the measured
// qubit onto it, reads it out and discards it, so the state never holds more
// than two modes.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cnotread/channels.hpp"

namespace cnotread {

enum class Scheme : int { kS1 = 1, kS2 = 2, kS3 = 3, kS4 = 4, kS5 = 5 };

inline constexpr int kMaxDetectors = 20;

/// Parses "1".."5"; throws std::invalid_argument otherwise.
Scheme scheme_from_int(int id);
inline int to_int(Scheme s) { return static_cast<int>(s); }

struct SchemeSpec {
  Scheme scheme = Scheme::kS1;
  int n_detectors = 4;
  /// Decode as loss/mixed when |S_t| <= loss_interval.
  int loss_interval = 0;

  bool operator==(const SchemeSpec&) const = default;

  void validate() const;
};

enum class Conclusion { kZero, kOne, kLoss, kMixed };

const char* to_string(Conclusion c);

struct DetectorRecord {
  int detector;
  Outcome outcome;
};

struct OutcomeBranch {
  std::vector<DetectorRecord> records;
  double probability = 0.0;
  Conclusion conclusion = Conclusion::kMixed;
};

struct ConclusionDistribution {
  double p_zero = 0.0;
  double p_one = 0.0;
  double p_loss = 0.0;
  double p_mixed = 0.0;
  double fidelity = 0.0;
  /// Mean number of CNOTs applied.
  double expected_gates = 0.0;

  double total() const { return p_zero + p_one + p_loss + p_mixed; }
  double& at(Conclusion c);
  double at(Conclusion c) const;
};

/// Running vote S_t: +1 per Zero and -1 per One, with the signs swapped while
/// an odd number of X gates precede the reading. `x_after` lists the detector
/// indices that are immediately followed by an X gate.
int vote_tally(std::span<const Outcome> records, std::span<const int> x_after);

/// Zero if S_t > threshold, One if S_t < -threshold, otherwise Mixed.
Conclusion tally_vote(std::span<const Outcome> records, std::span<const int> x_after,
                      int loss_interval);

/// First/second click of scheme 5: (Zero, One) -> Zero, (One, Zero) -> One,
/// equal readings -> Loss.
Conclusion decode_scheme5(Outcome first, Outcome second);

/// Detector indices followed by an X gate in the vote schemes.
std::vector<int> x_gate_positions(const SchemeSpec& spec);

/// Maps a raw conclusion onto the scheme's reporting convention: schemes that
/// detect loss (S2, S3, S5) report Mixed as Loss.
Conclusion report_as(Scheme scheme, Conclusion raw);

/// Ideal conclusion distribution (k1|alpha|^2, k1|beta|^2, 1-k1).
std::array<double, 3> ideal_distribution(const ErrorParams& params);

/// Fidelity of a conclusion distribution; Mixed earns no credit.
double conclusion_fidelity(const ConclusionDistribution& dist, const ErrorParams& params);

/// Exact conclusion distribution by enumeration of every measurement record.
/// Branches that share all future-relevant data (the vote tally, or the phase
/// and first reading in scheme 5) are summed before evolving further; the
/// map is linear, so this is exact.
ConclusionDistribution run_scheme(const SchemeSpec& spec, const ErrorParams& params);

/// Every measurement record with its probability and conclusion, without any
/// merging. Exponential in n for the vote schemes; limited to n <= 12.
std::vector<OutcomeBranch> enumerate_branches(const SchemeSpec& spec, const ErrorParams& params);

/// Sum of branch probabilities into a distribution (fidelity included).
ConclusionDistribution summarize(std::span<const OutcomeBranch> branches, const SchemeSpec& spec,
                                 const ErrorParams& params);

struct MonteCarloResult {
  ConclusionDistribution distribution;
  std::int64_t trials = 0;
  std::array<std::int64_t, 4> counts{};  ///< indexed by Conclusion
};

/// Trajectory sampling of the same circuits: Kraus indices, preparations and
/// detector outcomes are drawn at random. Deterministic for a fixed seed.
MonteCarloResult monte_carlo_run(const SchemeSpec& spec, const ErrorParams& params,
                                 std::int64_t trials, std::uint64_t seed);

}  // namespace cnotread
