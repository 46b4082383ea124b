#include "cnotread/cli/csv.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace cnotread::cli {

std::string format_csv(const SweepTable& table) {
  if (table.rows.empty()) throw std::invalid_argument("refusing to write an empty result table");
  std::ostringstream out;
  out << std::setprecision(12);
  out << kCsvHeader << '\n';
  const std::string axis = to_string(table.axis);
  for (const SweepRow& row : table.rows) {
    const auto& r = row.result;
    out << to_int(row.spec.scheme) << ',' << row.spec.n_detectors << ',' << axis << ','
        << row.axis_value << ',' << r.p_zero << ',' << r.p_one << ',' << r.p_loss << ','
        << r.p_mixed << ',' << r.fidelity << ',' << r.expected_gates << '\n';
  }
  return out.str();
}

void write_csv(const SweepTable& table, const std::string& path) {
  const std::string text = format_csv(table);
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
  file << text;
  file.flush();
  if (!file) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace cnotread::cli
