#include "cnotread/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "cnotread/presets.hpp"

namespace cnotread::cli {

namespace {

const std::vector<std::pair<Subcommand, std::string>> kSubcommands = {
    {Subcommand::kSimulate, "simulate"}, {Subcommand::kSweep, "sweep"},
    {Subcommand::kCrossover, "crossover"}, {Subcommand::kFit, "fit"},
    {Subcommand::kAnalytic, "analytic"},
};

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(trim(item));
  return out;
}

double parse_real(const std::string& key, const std::string& raw) {
  const std::string s = trim(raw);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw ConfigError(key, key + ": malformed number '" + raw + "'");
  }
  return v;
}

template <typename Int = long long>
Int parse_integer(const std::string& key, const std::string& raw) {
  const std::string s = trim(raw);
  Int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError(key, key + ": malformed integer '" + raw + "'");
  }
  return v;
}

double parse_probability(const std::string& key, const std::string& raw) {
  const double v = parse_real(key, raw);
  if (v < 0.0 || v > 1.0) {
    throw ConfigError(key, key + ": value " + trim(raw) + " is outside [0, 1]");
  }
  return v;
}

Complex parse_amplitude(const std::string& key, const std::string& raw) {
  const auto parts = split_list(raw);
  if (parts.empty() || parts.size() > 2) {
    throw ConfigError(key, key + ": expected 're' or 're,im', got '" + raw + "'");
  }
  const double re = parse_real(key, parts[0]);
  const double im = parts.size() == 2 ? parse_real(key, parts[1]) : 0.0;
  if (std::norm(Complex(re, im)) > 1.0 + 1e-12) {
    throw ConfigError(key, key + ": amplitude magnitude exceeds 1");
  }
  return {re, im};
}

bool parse_bool(const std::string& key, const std::string& raw) {
  const std::string s = trim(raw);
  if (s == "true" || s == "1") return true;
  if (s == "false" || s == "0") return false;
  throw ConfigError(key, key + ": expected true or false, got '" + raw + "'");
}

std::string format_real(double v) {
  std::ostringstream out;
  out << std::setprecision(std::numeric_limits<double>::max_digits10) << v;
  return out.str();
}

std::string format_amplitude(Complex c) {
  if (c.imag() == 0.0) return format_real(c.real());
  return format_real(c.real()) + "," + format_real(c.imag());
}

std::string dashed(std::string key) {
  std::replace(key.begin(), key.end(), '_', '-');
  return key;
}

Complex complement_amplitude(Complex given) {
  return {std::sqrt(std::max(0.0, 1.0 - std::norm(given))), 0.0};
}

}  // namespace

std::string to_string(Subcommand s) {
  for (const auto& [sub, name] : kSubcommands) {
    if (sub == s) return name;
  }
  return "?";
}

std::string to_string(StudyKind k) {
  switch (k) {
    case StudyKind::kDetectorCount:
      return "detectors";
    case StudyKind::kLoss:
      return "loss";
    case StudyKind::kGeneric:
      break;
  }
  return "generic";
}

StudyKind study_kind_from_string(const std::string& name) {
  if (name == "detectors" || name == "fig2") return StudyKind::kDetectorCount;
  if (name == "loss" || name == "fig3") return StudyKind::kLoss;
  if (name == "generic") return StudyKind::kGeneric;
  throw ConfigError("study", "study: unknown kind '" + name + "'");
}

SweepSpec RunConfig::sweep_spec() const {
  SweepSpec s;
  for (int id : schemes) s.schemes.push_back({scheme_from_int(id), spec.n_detectors, spec.loss_interval});
  s.axis = axis;
  s.from = from;
  s.to = to;
  s.steps = steps;
  s.fixed = params;
  return s;
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "k1",        "k2",        "p0",       "alpha",   "beta",      "p_x",
      "p_c",       "p_xloss",   "p_closs",  "closs_dist", "p_dloss", "p_dflip",
      "scheme",    "n_detectors", "loss_interval", "schemes", "axis", "from",
      "to",        "steps",     "study",    "trials",  "grid_points", "holdout",
      "epsilon",   "F",         "M",        "output",  "seed",      "emit_plot",
  };
  return keys;
}

void apply_setting(RunConfig& c, const std::string& key, const std::string& value) {
  ErrorParams& p = c.params;
  if (key == "k1") {
    p.k1 = parse_probability(key, value);
  } else if (key == "k2") {
    p.k2 = parse_probability(key, value);
  } else if (key == "p0") {
    p.p0 = parse_probability(key, value);
  } else if (key == "alpha") {
    p.alpha = parse_amplitude(key, value);
  } else if (key == "beta") {
    p.beta = parse_amplitude(key, value);
  } else if (key == "p_x") {
    p.p_x = parse_probability(key, value);
  } else if (key == "p_c") {
    p.p_c = parse_probability(key, value);
  } else if (key == "p_xloss") {
    p.p_xloss = parse_probability(key, value);
  } else if (key == "p_closs") {
    p.p_closs = parse_probability(key, value);
  } else if (key == "closs_dist") {
    const auto parts = split_list(value);
    if (parts.size() != 3) throw ConfigError(key, key + ": expected three weights 'control,target,both'");
    p.closs_dist = {parse_probability(key, parts[0]), parse_probability(key, parts[1]),
                    parse_probability(key, parts[2])};
    const double sum = p.closs_dist.control + p.closs_dist.target + p.closs_dist.both;
    if (std::abs(sum - 1.0) > 1e-12) throw ConfigError(key, key + ": weights must sum to 1");
  } else if (key == "p_dloss") {
    p.p_dloss = parse_probability(key, value);
  } else if (key == "p_dflip") {
    p.p_dflip = parse_probability(key, value);
  } else if (key == "scheme") {
    const auto id = parse_integer(key, value);
    if (id < 1 || id > 5) throw ConfigError(key, key + ": must be 1..5");
    c.spec.scheme = scheme_from_int(static_cast<int>(id));
  } else if (key == "n_detectors") {
    const auto n = parse_integer(key, value);
    if (n < 1 || n > kMaxDetectors) {
      throw ConfigError(key, key + ": must be 1.." + std::to_string(kMaxDetectors));
    }
    c.spec.n_detectors = static_cast<int>(n);
  } else if (key == "loss_interval") {
    const auto t = parse_integer(key, value);
    if (t < 0) throw ConfigError(key, key + ": must be >= 0");
    c.spec.loss_interval = static_cast<int>(t);
  } else if (key == "schemes") {
    std::vector<int> ids;
    for (const auto& part : split_list(value)) {
      const auto id = parse_integer(key, part);
      if (id < 1 || id > 5) throw ConfigError(key, key + ": scheme ids must be 1..5");
      ids.push_back(static_cast<int>(id));
    }
    if (ids.empty()) throw ConfigError(key, key + ": needs at least one scheme");
    c.schemes = ids;
  } else if (key == "axis") {
    try {
      c.axis = sweep_axis_from_string(trim(value));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(key, key + ": " + e.what());
    }
  } else if (key == "from") {
    c.from = parse_real(key, value);
  } else if (key == "to") {
    c.to = parse_real(key, value);
  } else if (key == "steps") {
    const auto s = parse_integer(key, value);
    if (s < 2) throw ConfigError(key, key + ": must be >= 2");
    c.steps = static_cast<int>(s);
  } else if (key == "study") {
    c.study = study_kind_from_string(trim(value));
  } else if (key == "trials") {
    const auto t = parse_integer(key, value);
    if (t < 0) throw ConfigError(key, key + ": must be >= 0");
    c.trials = t;
  } else if (key == "grid_points") {
    const auto g = parse_integer(key, value);
    if (g < 2) throw ConfigError(key, key + ": must be >= 2");
    c.grid_points = static_cast<int>(g);
  } else if (key == "holdout") {
    const auto h = parse_integer(key, value);
    if (h < 0) throw ConfigError(key, key + ": must be >= 0");
    c.holdout = static_cast<int>(h);
  } else if (key == "epsilon") {
    const double e = parse_real(key, value);
    if (!(e > 0.0 && e <= 1.0)) throw ConfigError(key, key + ": must lie in (0, 1]");
    c.epsilon = e;
  } else if (key == "F") {
    c.F = parse_probability(key, value);
  } else if (key == "M") {
    const auto m = parse_integer(key, value);
    if (m < 1) throw ConfigError(key, key + ": must be >= 1");
    c.M = static_cast<int>(m);
  } else if (key == "output") {
    c.output = trim(value);
  } else if (key == "seed") {
    c.seed = parse_integer<std::uint64_t>(key, value);
  } else if (key == "emit_plot") {
    c.emit_plot = parse_bool(key, value);
  } else {
    throw ConfigError(key, "unknown key '" + key + "'");
  }
}

void apply_preset(RunConfig& c, const std::string& name) {
  if (name == "fig2") {
    c.params = presets::fig2();
    c.axis = SweepAxis::kDetectors;
    c.from = 2.0;
    c.to = 10.0;
    c.steps = 5;
    c.study = StudyKind::kDetectorCount;
  } else if (name == "fig3") {
    c.params = presets::fig3();
    c.spec.n_detectors = 4;
    c.axis = SweepAxis::kK1;
    c.from = 0.99;
    c.to = 1.0;
    c.steps = 101;
    c.study = StudyKind::kLoss;
  } else if (name == "crossover") {
    c.params = presets::crossover(c.params.p_c, c.params.p_x, c.params.p_dloss);
    c.spec.n_detectors = 4;
  } else {
    throw ConfigError("preset", "preset: unknown preset '" + name + "' (fig2, fig3, crossover)");
  }
}

std::vector<std::pair<std::string, std::string>> parse_config_text(const std::string& text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("", "config line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    out.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return out;
}

std::string serialize_config(const RunConfig& c) {
  const ErrorParams& p = c.params;
  std::ostringstream out;
  auto put = [&](const std::string& key, const std::string& value) { out << key << " = " << value << '\n'; };
  put("k1", format_real(p.k1));
  put("k2", format_real(p.k2));
  put("p0", format_real(p.p0));
  put("alpha", format_amplitude(p.alpha));
  put("beta", format_amplitude(p.beta));
  put("p_x", format_real(p.p_x));
  put("p_c", format_real(p.p_c));
  put("p_xloss", format_real(p.p_xloss));
  put("p_closs", format_real(p.p_closs));
  put("closs_dist", format_real(p.closs_dist.control) + "," + format_real(p.closs_dist.target) +
                        "," + format_real(p.closs_dist.both));
  put("p_dloss", format_real(p.p_dloss));
  put("p_dflip", format_real(p.p_dflip));
  put("scheme", std::to_string(to_int(c.spec.scheme)));
  put("n_detectors", std::to_string(c.spec.n_detectors));
  put("loss_interval", std::to_string(c.spec.loss_interval));
  std::string ids;
  for (std::size_t i = 0; i < c.schemes.size(); ++i) ids += (i ? "," : "") + std::to_string(c.schemes[i]);
  put("schemes", ids);
  put("axis", to_string(c.axis));
  put("from", format_real(c.from));
  put("to", format_real(c.to));
  put("steps", std::to_string(c.steps));
  put("study", to_string(c.study));
  put("trials", std::to_string(c.trials));
  put("grid_points", std::to_string(c.grid_points));
  put("holdout", std::to_string(c.holdout));
  put("epsilon", format_real(c.epsilon));
  put("F", format_real(c.F));
  put("M", std::to_string(c.M));
  if (!c.output.empty()) put("output", c.output);
  put("seed", std::to_string(c.seed));
  put("emit_plot", c.emit_plot ? "true" : "false");
  return out.str();
}

std::string usage_text() {
  return R"(usage: cnotread <subcommand> [options]

subcommands:
  simulate   conclusion distribution of one scheme at one parameter point
  sweep      fidelity table over one parameter axis for several schemes
  crossover  break-even loss probability between schemes 3 and 4
  fit        least-squares fit of the break-even surface on a solver grid
  analytic   closed-form baselines (copier limit, majority formulas)

common options:
  --preset NAME        fig2 | fig3 | crossover
  --config FILE        key = value settings (see README)
  --output PATH        write results here instead of standard output
  --seed N             random seed (default 42)
  --plot               with sweep: also write PATH.py plotting the CSV

every config key is also a flag with '_' written as '-', e.g.
  --k1 --k2 --p0 --alpha --beta --p-x --p-c --p-xloss --p-closs --closs-dist
  --p-dloss --p-dflip --scheme --detectors --loss-interval --schemes --axis
  --from --to --steps --study --trials --grid-points --holdout --epsilon --F --M
)";
}

RunConfig parse_config(const std::vector<std::string>& args) {
  if (args.empty()) throw UsageError(usage_text());

  CLI::App app{"CNOT-chain readout simulator", "cnotread"};
  app.require_subcommand(1);
  app.set_help_flag();

  std::map<std::string, std::string> raw;
  std::map<std::string, std::vector<CLI::Option*>> options;
  std::string preset;
  std::string config_path;
  bool plot = false;
  std::vector<std::pair<Subcommand, CLI::App*>> subs;

  for (const auto& [sub, name] : kSubcommands) {
    CLI::App* s = app.add_subcommand(name);
    subs.emplace_back(sub, s);
    for (const std::string& key : config_keys()) {
      if (key == "emit_plot") continue;
      std::string flags = "--" + dashed(key);
      if (key == "n_detectors") flags += ",--detectors";
      options[key].push_back(s->add_option(flags, raw[key]));
    }
    s->add_option("--preset", preset);
    s->add_option("--config", config_path);
    s->add_flag("--plot", plot);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    throw UsageError(std::string(e.what()) + "\n\n" + usage_text());
  }

  RunConfig config;
  for (const auto& [sub, s] : subs) {
    if (s->parsed()) config.subcommand = sub;
  }

  // Break-even solves default to their own baseline.
  if (preset.empty() && config.subcommand == Subcommand::kCrossover) preset = "crossover";
  if (!preset.empty()) apply_preset(config, preset);

  bool alpha_set = false;
  bool beta_set = false;
  auto track = [&](const std::string& key) {
    if (key == "alpha") alpha_set = true;
    if (key == "beta") beta_set = true;
  };

  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw ConfigError("config", "config: cannot read '" + config_path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    for (const auto& [key, value] : parse_config_text(buffer.str())) {
      apply_setting(config, key, value);
      track(key);
    }
  }
  for (const std::string& key : config_keys()) {
    auto it = options.find(key);
    if (it == options.end()) continue;
    const bool given = std::any_of(it->second.begin(), it->second.end(),
                                   [](const CLI::Option* o) { return o->count() > 0; });
    if (!given) continue;
    apply_setting(config, key, raw[key]);
    track(key);
  }
  if (plot) config.emit_plot = true;

  // One amplitude given alone fixes the other's magnitude.
  if (alpha_set && !beta_set) config.params.beta = complement_amplitude(config.params.alpha);
  if (beta_set && !alpha_set) config.params.alpha = complement_amplitude(config.params.beta);

  try {
    config.params.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("params", e.what());
  }
  return config;
}

}  // namespace cnotread::cli
