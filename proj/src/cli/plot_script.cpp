#include "cnotread/cli/plot_script.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "cnotread/cli/csv.hpp"

namespace cnotread::cli {

namespace {

std::string escape_python(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '\\' || c == '\'') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string plot_script_for(const std::string& csv_path, StudyKind kind) {
  std::ifstream in(csv_path);
  if (!in) throw std::runtime_error("cannot read CSV '" + csv_path + "'");
  std::string header;
  std::getline(in, header);
  if (header != kCsvHeader) {
    throw std::runtime_error("'" + csv_path + "' does not have the expected result header");
  }
  std::set<int> schemes;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    schemes.insert(std::stoi(line.substr(0, line.find(','))));
  }

  std::ostringstream py;
  py << "#!/usr/bin/env python3\n"
     << "# Generated by cnotread. Plots fidelity against the swept axis.\n"
     << "import csv\n"
     << "import matplotlib\n"
     << "matplotlib.use('Agg')\n"
     << "import matplotlib.pyplot as plt\n\n"
     << "CSV = '" << escape_python(csv_path) << "'\n"
     << "SCHEMES = [";
  bool first = true;
  for (int s : schemes) {
    py << (first ? "" : ", ") << s;
    first = false;
  }
  py << "]\n\n"
     << "series = {s: ([], []) for s in SCHEMES}\n"
     << "axis = None\n"
     << "with open(CSV, newline='') as f:\n"
     << "    for row in csv.DictReader(f):\n"
     << "        axis = row['axis']\n"
     << "        xs, ys = series[int(row['scheme'])]\n"
     << "        xs.append(float(row['axis_value']))\n"
     << "        ys.append(float(row['fidelity']))\n\n"
     << "fig, ax = plt.subplots(figsize=(7, 4.5))\n"
     << "for s in SCHEMES:\n"
     << "    xs, ys = series[s]\n";
  if (kind == StudyKind::kLoss) {
    py << "    pts = [(1.0 - x, y) for x, y in zip(xs, ys) if x < 1.0]\n"
       << "    ax.plot([p[0] for p in pts], [p[1] for p in pts], marker='.', label=f'Scheme {s}')\n"
       << "ax.set_xscale('log')\n"
       << "ax.set_xlabel('1 - k1 (initial photon loss probability)')\n";
  } else if (kind == StudyKind::kDetectorCount) {
    py << "    ax.plot(xs, ys, marker='o', label=f'Scheme {s}')\n"
       << "ax.set_xlabel('number of detectors')\n";
  } else {
    py << "    ax.plot(xs, ys, marker='.', label=f'Scheme {s}')\n"
       << "ax.set_xlabel(axis)\n";
  }
  py << "ax.set_ylabel('fidelity')\n"
     << "ax.legend()\n"
     << "ax.grid(True, alpha=0.3)\n"
     << "fig.tight_layout()\n"
     << "fig.savefig(CSV.rsplit('.', 1)[0] + '.png', dpi=150)\n";
  return py.str();
}

void emit_plot_script(const std::string& csv_path, StudyKind kind, const std::string& script_path) {
  const std::string text = plot_script_for(csv_path, kind);
  std::ofstream out(script_path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + script_path + "' for writing");
  out << text;
  if (!out) throw std::runtime_error("failed writing '" + script_path + "'");
}

}  // namespace cnotread::cli
