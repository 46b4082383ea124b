#pragma once

// Run configuration for the command-line tool.
//
// Config files hold one `key = value` per line; `#` starts a comment. Keys are
// the ErrorParams field names (k1, k2, p0, alpha, beta, p_x, p_c, p_xloss,
// p_closs, closs_dist, p_dloss, p_dflip) plus the run keys listed in
// config_keys(). Complex amplitudes are written `re` or `re,im`;
// closs_dist and schemes are comma-separated lists.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "cnotread/sweep.hpp"

namespace cnotread::cli {

enum class Subcommand { kSimulate, kSweep, kCrossover, kFit, kAnalytic };

std::string to_string(Subcommand s);

/// Plot layout for emitted scripts.
enum class StudyKind { kGeneric, kDetectorCount, kLoss };

std::string to_string(StudyKind k);
StudyKind study_kind_from_string(const std::string& name);

struct RunConfig {
  Subcommand subcommand = Subcommand::kSimulate;
  ErrorParams params;
  SchemeSpec spec;

  // sweep
  std::vector<int> schemes = {1, 2, 3, 4, 5};
  SweepAxis axis = SweepAxis::kDetectors;
  double from = 2.0;
  double to = 10.0;
  int steps = 5;
  StudyKind study = StudyKind::kGeneric;

  // simulate: Monte Carlo trials, 0 for the exact engine
  std::int64_t trials = 0;

  // fit
  int grid_points = 4;
  int holdout = 16;

  // analytic
  double epsilon = 0.714;
  double F = 0.9;
  int M = 3;

  std::string output;  ///< empty: standard output
  std::uint64_t seed = 42;
  bool emit_plot = false;

  bool operator==(const RunConfig&) const = default;

  SweepSpec sweep_spec() const;
};

/// Bad input from the user. `key` names the offending setting when known.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::runtime_error(message), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

/// Thrown for empty or unparsable command lines; carries the usage text.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Every key accepted in config files, in serialization order.
const std::vector<std::string>& config_keys();

/// Applies one key/value pair. Throws ConfigError naming the key on unknown
/// keys, malformed numbers and out-of-range probabilities.
void apply_setting(RunConfig& config, const std::string& key, const std::string& value);

/// Applies a named parameter bundle ("fig2", "fig3", "crossover").
void apply_preset(RunConfig& config, const std::string& name);

/// Parses config-file text into ordered (key, value) pairs.
std::vector<std::pair<std::string, std::string>> parse_config_text(const std::string& text);

/// Config-file text that parses back to `config` (subcommand excluded).
std::string serialize_config(const RunConfig& config);

/// Resolves a full command line (without the program name). Settings apply
/// in the order defaults, --preset, --config file, flags.
RunConfig parse_config(const std::vector<std::string>& args);

std::string usage_text();

}  // namespace cnotread::cli
