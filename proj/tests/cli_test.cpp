#include "cnotread/cli/app.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>

#include "cnotread/cli/config.hpp"
#include "cnotread/cli/csv.hpp"
#include "cnotread/cli/plot_script.hpp"
#include "gtest/gtest.h"
#include "test_util.hpp"

using namespace cnotread;
using namespace cnotread::cli;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::string scratch(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("cnotread_" + name)).string();
}

int count_of(const std::string& text, const std::string& needle) {
  int n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST(Cli, EmptyArgsPrintUsage) {
  const CliRun r = run({});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("usage: cnotread"), std::string::npos);
}

TEST(Cli, OutOfRangeNamesKey) {
  const CliRun r = run({"simulate", "--k1", "1.5"});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("k1"), std::string::npos);
}

TEST(Cli, UnknownFlagRejected) {
  EXPECT_EQ(run({"simulate", "--bogus", "1"}).code, kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).code, kExitUsage);
}

TEST(Cli, MalformedNumberNamesKey) {
  const CliRun r = run({"simulate", "--p-c", "0.0x1"});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("p_c"), std::string::npos);
}

TEST(Cli, SchemeThreeOddDetectorsIsUsageError) {
  const CliRun r = run({"simulate", "--scheme", "3", "--detectors", "5"});
  EXPECT_EQ(r.code, kExitUsage);
}

TEST(Cli, SimulateBaseline) {
  const CliRun r = run({"simulate", "--preset", "fig2", "--scheme", "4", "--detectors", "4"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto lines = lines_of(r.out);
  ASSERT_EQ(lines.size(), 2u);
  EXPECT_EQ(lines[0], kCsvHeader);
  EXPECT_EQ(lines[1].rfind("4,4,n_detectors,4,", 0), 0u) << lines[1];
  const auto exact = run_scheme({Scheme::kS4, 4, 0}, [] {
    RunConfig c;
    apply_preset(c, "fig2");
    return c.params;
  }());
  std::ostringstream fid;
  fid << std::setprecision(12) << exact.fidelity;
  EXPECT_NE(lines[1].find(fid.str()), std::string::npos);
}

TEST(Cli, SimulateMonteCarlo) {
  const CliRun r = run({"simulate", "--preset", "fig2", "--scheme", "1", "--trials", "2000", "--seed", "5"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(run({"simulate", "--preset", "fig2", "--scheme", "1", "--trials", "2000", "--seed", "5"}).out,
            r.out);
}

TEST(Cli, SweepCsvShapeAndDeterminism) {
  const std::vector<std::string> args = {"sweep", "--schemes", "1,4", "--axis", "p_c", "--from", "0",
                                         "--to", "0.01", "--steps", "2", "--detectors", "4"};
  const CliRun a = run(args);
  ASSERT_EQ(a.code, kExitOk) << a.err;
  // Two grid points times two schemes.
  EXPECT_EQ(lines_of(a.out).size(), 5u);
  EXPECT_EQ(run(args).out, a.out);

  const CliRun one = run({"sweep", "--schemes", "2", "--axis", "p_x", "--from", "0", "--to", "0.01",
                       "--steps", "2"});
  ASSERT_EQ(one.code, kExitOk);
  EXPECT_EQ(lines_of(one.out).size(), 3u);
}

TEST(Cli, LossStudyWritesCsvAndPlot) {
  const std::string csv = scratch("cli_test_fig3.csv");
  std::filesystem::remove(csv);
  std::filesystem::remove(csv + ".py");
  const CliRun r = run({"sweep", "--preset", "fig3", "--output", csv, "--plot"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto lines = lines_of(slurp(csv));
  EXPECT_EQ(lines.size(), 1u + 101u * 5u);
  const std::string script = slurp(csv + ".py");
  EXPECT_NE(script.find("SCHEMES = [1, 2, 3, 4, 5]"), std::string::npos);
  EXPECT_NE(script.find("set_xscale('log')"), std::string::npos);
  EXPECT_EQ(count_of(script, "f'Scheme {s}'"), 1);
}

TEST(Cli, PlotNeedsOutput) {
  EXPECT_EQ(run({"sweep", "--steps", "2", "--plot"}).code, kExitUsage);
}

TEST(Cli, CrossoverAndAnalytic) {
  const CliRun c = run({"crossover", "--p-c", "0.001", "--p-x", "0.001", "--p-dloss", "0.1"});
  ASSERT_EQ(c.code, kExitOk) << c.err;
  EXPECT_NE(c.out.find("status = found"), std::string::npos) << c.out;
  EXPECT_NE(c.out.find("published_surface_p_L"), std::string::npos);

  const CliRun a = run({"analytic", "--epsilon", "0.714", "--F", "0.5", "--M", "3"});
  ASSERT_EQ(a.code, kExitOk) << a.err;
  EXPECT_NE(a.out.find("= 0.6875"), std::string::npos) << a.out;
  EXPECT_NE(a.out.find("independent_majority"), std::string::npos);
}

TEST(Config, RoundTrip) {
  std::mt19937_64 rng(71);
  std::uniform_int_distribution<int> pick(1, 5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    RunConfig c;
    c.params = fixtures::random_params(rng, 0.5);
    c.spec = {scheme_from_int(pick(rng)), 2 * pick(rng), pick(rng) - 1};
    c.schemes = {pick(rng), pick(rng)};
    c.axis = SweepAxis::kPdLoss;
    c.from = 0.1 * u(rng);
    c.to = 0.5 + 0.5 * u(rng);
    c.steps = pick(rng) + 1;
    c.study = StudyKind::kLoss;
    c.trials = pick(rng) * 1000;
    c.grid_points = pick(rng) + 2;
    c.holdout = pick(rng);
    c.epsilon = 0.5 + 0.5 * u(rng);
    c.F = u(rng);
    c.M = pick(rng);
    c.output = "out_" + std::to_string(trial) + ".csv";
    c.seed = rng();
    c.emit_plot = trial % 2 == 0;

    RunConfig back;
    for (const auto& [key, value] : parse_config_text(serialize_config(c))) {
      apply_setting(back, key, value);
    }
    EXPECT_TRUE(back == c) << serialize_config(c) << "\n---\n" << serialize_config(back);
  }
}

TEST(Config, FileAndFlagsLayer) {
  const std::string path = scratch("cli_test_config.txt");
  {
    std::ofstream f(path);
    f << "# baseline\np_c = 0.02\nscheme = 5  # two-click\nn_detectors = 6\n";
  }
  const RunConfig c = parse_config({"simulate", "--preset", "fig2", "--config", path, "--p-c", "0.03"});
  EXPECT_DOUBLE_EQ(c.params.p_c, 0.03);
  EXPECT_DOUBLE_EQ(c.params.k2, 0.999);
  EXPECT_EQ(c.spec.scheme, Scheme::kS5);
  EXPECT_EQ(c.spec.n_detectors, 6);
}

TEST(Config, SingleAmplitudeFixesTheOther) {
  const RunConfig c = parse_config({"simulate", "--alpha", "0.6"});
  EXPECT_NEAR(std::abs(c.params.beta), 0.8, 1e-15);
  EXPECT_THROW(parse_config({"simulate", "--alpha", "0.6", "--beta", "0.6"}), ConfigError);
}

TEST(Config, BadSettings) {
  RunConfig c;
  try {
    apply_setting(c, "nonsense", "1");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.key(), "nonsense");
  }
  EXPECT_THROW(apply_setting(c, "closs_dist", "0.5,0.6,0"), ConfigError);
  EXPECT_THROW(apply_setting(c, "p_dloss", "-0.1"), ConfigError);
  EXPECT_THROW(apply_preset(c, "fig9"), ConfigError);
  EXPECT_THROW(parse_config_text("just words\n"), ConfigError);
}

TEST(PlotScript, MissingCsv) {
  EXPECT_THROW(plot_script_for("does_not_exist.csv", StudyKind::kGeneric), std::runtime_error);
}

TEST(PlotScript, HeaderMismatch) {
  const std::string path = scratch("cli_test_bad.csv");
  {
    std::ofstream f(path);
    f << "a,b,c\n1,2,3\n";
  }
  EXPECT_THROW(plot_script_for(path, StudyKind::kGeneric), std::runtime_error);
}

TEST(Csv, EmptyTableRejected) {
  EXPECT_THROW(format_csv(SweepTable{SweepAxis::kK1, {}}), std::invalid_argument);
}
