#pragma once

#include <string>

#include "cnotread/cli/config.hpp"

namespace cnotread::cli {

/// Python/matplotlib script text plotting fidelity against the CSV's axis,
/// one series per scheme. Loss studies plot 1 - k1 on a log axis.
/// Throws std::runtime_error when the CSV is missing or its header differs.
std::string plot_script_for(const std::string& csv_path, StudyKind kind);

/// Writes plot_script_for(csv_path, kind) to `script_path`.
void emit_plot_script(const std::string& csv_path, StudyKind kind, const std::string& script_path);

}  // namespace cnotread::cli
