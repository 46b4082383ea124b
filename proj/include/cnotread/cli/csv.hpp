#pragma once

#include <string>

#include "cnotread/sweep.hpp"

namespace cnotread::cli {

inline constexpr const char* kCsvHeader =
    "scheme,n_detectors,axis,axis_value,p_zero,p_one,p_loss,p_mixed,fidelity,expected_gates";

/// CSV text for a result table, 12 significant digits per number.
std::string format_csv(const SweepTable& table);

/// Writes format_csv(table) to `path`. Throws std::invalid_argument on an
/// empty table and std::runtime_error on I/O failure.
void write_csv(const SweepTable& table, const std::string& path);

}  // namespace cnotread::cli
