#pragma once

// Dense parameter sweeps over the schemes and the fidelity-dip analysis of
// the loss-detecting schemes.

#include <optional>
#include <string>
#include <vector>

#include "cnotread/schemes.hpp"

namespace cnotread {

enum class SweepAxis { kK1, kK2, kP0, kPx, kPc, kPxLoss, kPcLoss, kPdLoss, kPdFlip, kDetectors };

/// Field name as used by ErrorParams and the config format ("k1", "p_x",
/// ..., "n_detectors").
std::string to_string(SweepAxis axis);
/// Throws std::invalid_argument for unknown names.
SweepAxis sweep_axis_from_string(const std::string& name);

struct SweepSpec {
  std::vector<SchemeSpec> schemes;
  SweepAxis axis = SweepAxis::kDetectors;
  double from = 2.0;
  double to = 10.0;
  int steps = 5;
  ErrorParams fixed;

  bool operator==(const SweepSpec&) const = default;

  void validate() const;
  /// Grid values from..to inclusive; rounded for the detector axis.
  std::vector<double> axis_values() const;
};

struct SweepRow {
  double axis_value;
  SchemeSpec spec;
  ConclusionDistribution result;
};

struct SweepTable {
  SweepAxis axis;
  std::vector<SweepRow> rows;
};

/// Applies one axis value to a copy of the inputs.
void apply_axis(SweepAxis axis, double value, ErrorParams& params, SchemeSpec& spec);

double fidelity_at(const SchemeSpec& spec, const ErrorParams& params);

/// Rows ordered by axis value, then by the order of spec.schemes. Grid points
/// a scheme cannot run at (scheme 3 with odd n) are skipped.
SweepTable run_sweep(const SweepSpec& spec, unsigned workers = 0);

/// Shape of fidelity against k1 near k1 = 1.
struct DipAnalysis {
  std::vector<double> k1;
  std::vector<double> fidelity;
  std::vector<double> local_minima;
  std::vector<double> local_maxima;
  /// Largest k1 where the central-difference slope dF/dk1 changes sign.
  std::optional<double> onset;
};

/// Samples fidelity on k1 in [k1_from, k1_to] at `grid_step` and locates
/// slope sign changes with central differences of width `slope_step`.
DipAnalysis analyze_dip(const SchemeSpec& spec, const ErrorParams& params, double k1_from,
                        double k1_to, double grid_step, double slope_step = 1e-4);

}  // namespace cnotread
