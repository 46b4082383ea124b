#include "cnotread/cli/app.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "cnotread/analytics.hpp"
#include "cnotread/cli/config.hpp"
#include "cnotread/cli/csv.hpp"
#include "cnotread/cli/plot_script.hpp"
#include "cnotread/surface_fit.hpp"

namespace cnotread::cli {

namespace {

// Writes to the configured output file, or to `out` when none is set.
void deliver(const RunConfig& config, const std::string& text, std::ostream& out) {
  if (config.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(config.output, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot open '" + config.output + "' for writing");
  file << text;
  if (!file) throw std::runtime_error("failed writing '" + config.output + "'");
}

int run_simulate(const RunConfig& config, std::ostream& out) {
  ConclusionDistribution dist;
  if (config.trials > 0) {
    dist = monte_carlo_run(config.spec, config.params, config.trials, config.seed).distribution;
  } else {
    dist = run_scheme(config.spec, config.params);
  }
  SweepTable table{SweepAxis::kDetectors, {{static_cast<double>(config.spec.n_detectors), config.spec, dist}}};
  deliver(config, format_csv(table), out);
  return kExitOk;
}

int run_sweep_command(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const SweepSpec spec = config.sweep_spec();
  const SweepTable table = run_sweep(spec);
  if (table.rows.size() < spec.axis_values().size() * spec.schemes.size()) {
    err << "note: skipped grid points where scheme 3 would need an odd detector count\n";
  }
  if (config.output.empty()) {
    out << format_csv(table);
  } else {
    write_csv(table, config.output);
  }
  if (config.emit_plot) {
    if (config.output.empty()) throw ConfigError("output", "--plot needs --output for the CSV path");
    const std::string script = config.output + ".py";
    emit_plot_script(config.output, config.study, script);
    err << "wrote " << script << '\n';
  }
  return kExitOk;
}

const char* status_name(CrossoverStatus s) {
  switch (s) {
    case CrossoverStatus::kFound:
      return "found";
    case CrossoverStatus::kAtBoundary:
      return "at_boundary";
    case CrossoverStatus::kNoCrossover:
      return "no_crossover";
  }
  return "?";
}

int run_crossover_command(const RunConfig& config, std::ostream& out) {
  CrossoverOptions options;
  options.n_detectors = config.spec.n_detectors;
  const auto& p = config.params;
  const CrossoverResult r = crossover_loss(p.p_c, p.p_x, p.p_dloss, p, options);
  std::ostringstream text;
  text << std::setprecision(12);
  text << "p_c = " << r.p_c << "\np_x = " << r.p_x << "\np_D = " << r.p_D << "\n"
       << "status = " << status_name(r.status) << "\n"
       << "p_L = " << r.p_L << "\n"
       << "iterations = " << r.iterations << "\n"
       << "bracket_width = " << r.bracket_width << "\n";
  if (r.status == CrossoverStatus::kNoCrossover) text << "sign = " << r.sign << "\n";
  text << "published_surface_p_L = " << evaluate_published_surface(r.p_c, r.p_x, r.p_D) << "\n";
  deliver(config, text.str(), out);
  return kExitOk;
}

int run_fit_command(const RunConfig& config, std::ostream& out) {
  CrossoverOptions options;
  options.n_detectors = config.spec.n_detectors;
  const auto grid = solve_grid(default_fit_axes(config.grid_points), options);
  const FitCoefficients fit = fit_crossover_surface(grid);

  std::ostringstream text;
  text << std::setprecision(9);
  text << "grid_points_per_axis = " << config.grid_points << "\n"
       << "points_used = " << fit.points_used << "\n"
       << "residual_norm = " << fit.residual_norm << "\n"
       << "max_abs_residual = " << fit.max_abs_residual << "\n"
       << "condition_number = " << fit.condition_number << "\n";
  for (int j = 0; j < kSurfaceTerms; ++j) {
    text << "coefficient[" << j << "] = " << fit.values[j] << "  (published " << kPublishedSurface[j]
         << ")\n";
  }
  if (config.holdout > 0) {
    const auto held = solve_random_points(config.holdout, config.seed, options);
    text << "holdout_points = " << config.holdout << "\n"
         << "holdout_max_error = " << max_prediction_error(fit, held) << "\n";
  }
  deliver(config, text.str(), out);
  return kExitOk;
}

int run_analytic_command(const RunConfig& config, std::ostream& out) {
  namespace an = analytics;
  const auto& p = config.params;
  const int n = config.spec.n_detectors;
  const double S = p.k2;
  const double K = 1.0 - p.p_dloss;
  const auto twirl = an::twirl_from_cnot_error(p.p_c);

  std::ostringstream text;
  text << std::setprecision(10);
  text << "deuar_munro_limit(epsilon=" << config.epsilon << ") = " << an::deuar_munro_limit(config.epsilon)
       << "\n"
       << "schaetz_majority(F=" << config.F << ", M=" << config.M
       << ") = " << an::schaetz_majority(config.F, config.M) << "\n"
       << "independent model: S=" << S << " K=" << K << " W=" << twirl.W << " T=" << twirl.T << "\n";
  for (int m = 1; m <= n; ++m) {
    text << "C_" << m << " = " << an::cm_correct_prob(S, K, twirl.W, twirl.T, m) << "\n";
  }
  const double independent = an::cm_majority(S, K, twirl.W, twirl.T, n);

  // The same circuit under the correlated CNOT channel, scheme 1, qubit present.
  ErrorParams sim = p;
  sim.k1 = 1.0;
  sim.p_x = 0.0;
  sim.p_xloss = 0.0;
  sim.p_closs = 0.0;
  sim.p_dflip = 0.0;
  const auto dist = run_scheme({Scheme::kS1, n, 0}, sim);
  const double simulated = std::norm(p.beta) >= std::norm(p.alpha) ? dist.p_one : dist.p_zero;
  text << "independent_majority = " << independent << "\n"
       << "simulated_majority_scheme1 = " << simulated << "\n"
       << "gap = " << simulated - independent << "\n";
  deliver(config, text.str(), out);
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  try {
    config = parse_config(args);
  } catch (const UsageError& e) {
    err << e.what();
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    switch (config.subcommand) {
      case Subcommand::kSimulate:
        return run_simulate(config, out);
      case Subcommand::kSweep:
        return run_sweep_command(config, out, err);
      case Subcommand::kCrossover:
        return run_crossover_command(config, out);
      case Subcommand::kFit:
        return run_fit_command(config, out);
      case Subcommand::kAnalytic:
        return run_analytic_command(config, out);
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitRuntime;
}

}  // namespace cnotread::cli
