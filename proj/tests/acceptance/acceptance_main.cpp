// Acceptance runner: one PASS/FAIL line per criterion.
//
//   acceptance                 run every criterion
//   acceptance --criterion N   run criterion N only

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cnotread/analytics.hpp"
#include "cnotread/crossover.hpp"
#include "cnotread/presets.hpp"
#include "cnotread/scheme_trace.hpp"
#include "cnotread/schemes.hpp"
#include "cnotread/surface_fit.hpp"
#include "cnotread/sweep.hpp"

using namespace cnotread;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

const Scheme kAll[] = {Scheme::kS1, Scheme::kS2, Scheme::kS3, Scheme::kS4, Scheme::kS5};

// Probability that the first `needed` clicks arrive within n detectors.
double clicks_within(const ErrorParams& p, int n, int needed) {
  double at_least = 0.0;
  // The qubit is present (k1 = 1); each round clicks with probability
  // k2 (1 - p_dloss) and the count of clicks is binomial.
  const double q = p.k2 * (1.0 - p.p_dloss);
  for (int k = needed; k <= n; ++k) {
    double c = 1.0;
    for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    at_least += c * std::pow(q, k) * std::pow(1.0 - q, n - k);
  }
  return at_least;
}

Verdict criterion1() {
  Verdict v;
  const ErrorParams p = presets::fig2();
  for (int n = 2; n <= 10; n += 2) {
    const double f1 = run_scheme({Scheme::kS1, n, 0}, p).fidelity;
    const double f2 = run_scheme({Scheme::kS2, n, 0}, p).fidelity;
    const double f3 = run_scheme({Scheme::kS3, n, 0}, p).fidelity;
    const double f4 = run_scheme({Scheme::kS4, n, 0}, p).fidelity;
    v.detail << " n=" << n << ":S1=" << f1 << ",S2=" << f2 << ",S3=" << f3 << ",S4=" << f4;
    v.check(f4 > f1, "S4 > S1 at n=" + std::to_string(n));
    v.check(f3 >= f2, "S3 >= S2 at n=" + std::to_string(n));
  }
  return v;
}

Verdict criterion2() {
  Verdict v;
  const ErrorParams p = presets::fig2();
  for (Scheme s : {Scheme::kS1, Scheme::kS2, Scheme::kS3, Scheme::kS4}) {
    int best_n = 0;
    double best = -1.0;
    v.detail << " S" << to_int(s) << ":";
    for (int n = 2; n <= 10; n += 2) {
      const double f = run_scheme({s, n, 0}, p).fidelity;
      v.detail << n << "=" << f << (n < 10 ? "," : "");
      if (f > best) {
        best = f;
        best_n = n;
      }
    }
    v.detail << " argmax=" << best_n << ";";
    v.check(best_n == 4, "S" + std::to_string(to_int(s)) + " peaks at n=" + std::to_string(best_n));
  }
  return v;
}

Verdict criterion3() {
  Verdict v;
  const ErrorParams p = presets::fig2();
  const int n = 4;
  // Single-click schemes need one click; the two-click scheme needs two.
  const double single = clicks_within(p, n, 1);
  const double twice = clicks_within(p, n, 2);
  const auto s4 = run_scheme({Scheme::kS4, n, 0}, p);
  const auto s5 = run_scheme({Scheme::kS5, n, 0}, p);
  v.detail << " P(>=1 click)=" << single << " (S4 concluded " << s4.p_zero + s4.p_one << ")"
           << " P(>=2 clicks)=" << twice << " (S5 p_loss " << s5.p_loss << ")";
  v.check(std::abs(single - 0.9999) <= 0.0005, "single-click probability near 0.9999");
  v.check(std::abs(s4.p_zero + s4.p_one - single) <= 1e-12, "S4 engine matches click count");
  v.check(std::abs(twice - 0.999) <= 0.0005, "S5 two-click probability near 0.999");
  return v;
}

Verdict criterion4() {
  Verdict v;
  const auto low = crossover_loss(0.001, 0.001, 0.1);
  const auto high = crossover_loss(0.05, 0.05, 0.1);
  v.detail << " p_L(0.001,0.001,0.1)=" << low.p_L << " p_L(0.05,0.05,0.1)=" << high.p_L;
  v.check(low.status == CrossoverStatus::kFound && low.p_L >= 0.0001 && low.p_L <= 0.0008,
          "low point in [0.0001, 0.0008]");
  v.check(high.status == CrossoverStatus::kFound && high.p_L >= 0.012 && high.p_L <= 0.019,
          "high point in [0.012, 0.019]");
  return v;
}

Verdict criterion5() {
  Verdict v;
  const double zero = evaluate_published_surface(0.0, 0.0, 0.0);
  const double high = evaluate_published_surface(0.05, 0.05, 0.1);
  v.detail << " surface(0,0,0)=" << zero << " surface(0.05,0.05,0.1)=" << high;
  // 1 - 0.99986 carries one rounding of the subtraction.
  v.check(std::abs(zero - 0.00014) <= 1e-15, "constant term gives 0.00014");
  v.check(high >= 0.0150 && high <= 0.0156, "high point in [0.0150, 0.0156]");
  return v;
}

Verdict criterion6() {
  Verdict v;
  using clock = std::chrono::steady_clock;

  // Synthetic recovery from the printed coefficients.
  const GridAxes axes = default_fit_axes(4);
  std::vector<CrossoverResult> synthetic;
  for (double pc : axes.p_c) {
    for (double px : axes.p_x) {
      for (double pd : axes.p_D) {
        CrossoverResult r;
        r.p_c = pc;
        r.p_x = px;
        r.p_D = pd;
        r.p_L = evaluate_published_surface(pc, px, pd);
        synthetic.push_back(r);
      }
    }
  }
  const FitCoefficients recovered = fit_crossover_surface(synthetic);
  double worst = 0.0;
  for (int i = 0; i < kSurfaceTerms; ++i) {
    worst = std::max(worst, std::abs(recovered.values[i] - kPublishedSurface[i]));
  }
  v.detail << " synthetic_max_coeff_error=" << worst;
  v.check(worst <= 1e-8, "synthetic recovery within 1e-8");

  // 64-point smoke grid.
  const auto t0 = clock::now();
  const auto smoke = solve_grid(default_fit_axes(4));
  const FitCoefficients smoke_fit = fit_crossover_surface(smoke);
  const double smoke_seconds = std::chrono::duration<double>(clock::now() - t0).count();
  const auto held_out = solve_random_points(64, 7);
  const double smoke_error = max_prediction_error(smoke_fit, held_out);
  v.detail << " smoke: " << smoke_seconds << "s max_residual=" << smoke_fit.max_abs_residual
           << " held_out_error=" << smoke_error;
  v.check(smoke_seconds < 60.0, "smoke grid under a minute");
  v.check(smoke_error <= 1e-4, "smoke held-out error <= 1e-4");

  // Full 512-point grid.
  const auto full = solve_grid(default_fit_axes(8));
  const FitCoefficients full_fit = fit_crossover_surface(full);
  const double full_error = max_prediction_error(full_fit, held_out);
  v.detail << " full: points=" << full_fit.points_used << " max_residual=" << full_fit.max_abs_residual
           << " held_out_error=" << full_error << " coeffs=";
  for (int i = 0; i < kSurfaceTerms; ++i) v.detail << (i ? "," : "") << full_fit.values[i];
  v.check(full_error <= 1e-4, "512-point held-out error <= 1e-4");
  return v;
}

Verdict criterion7() {
  Verdict v;
  const ErrorParams p = presets::fig3();
  for (Scheme s : {Scheme::kS2, Scheme::kS3}) {
    const DipAnalysis d = analyze_dip({s, 4, 0}, p, 0.99, 1.0, 1e-4);
    v.detail << " S" << to_int(s) << ": minima={";
    for (double m : d.local_minima) v.detail << m << " ";
    v.detail << "} maxima={";
    for (double m : d.local_maxima) v.detail << m << " ";
    v.detail << "} onset=" << (d.onset ? std::to_string(*d.onset) : "none") << ";";
    bool minimum_in_window = false;
    for (double m : d.local_minima) minimum_in_window |= (m >= 0.997 && m <= 0.9995);
    const std::string tag = "S" + std::to_string(to_int(s));
    v.check(minimum_in_window, tag + " interior local minimum in [0.997, 0.9995]");
    v.check(d.onset && *d.onset >= 0.997 && *d.onset <= 0.9995, tag + " onset in [0.997, 0.9995]");
  }

  // Soft target: onset against the quoted per-gate-error thresholds.
  const double errors[] = {0.0001, 0.0005, 0.002, 0.005};
  const double quoted[] = {0.99991, 0.99949, 0.9982, 0.9957};
  for (int i = 0; i < 4; ++i) {
    ErrorParams q = p;
    q.p_x = q.p_c = q.p_xloss = q.p_closs = errors[i];
    const double lo = std::max(0.98, quoted[i] - 0.003);
    const DipAnalysis d = analyze_dip({Scheme::kS3, 4, 0}, q, lo, 1.0, 1e-5);
    const bool ok = d.onset && std::abs(*d.onset - quoted[i]) <= 0.0005;
    std::printf("INFO criterion 7 soft: gate error %g S3 onset %s (target %g +/- 0.0005) %s\n",
                errors[i], d.onset ? std::to_string(*d.onset).c_str() : "none", quoted[i],
                ok ? "within" : "outside");
  }
  return v;
}

Verdict criterion8() {
  namespace an = analytics;
  Verdict v;
  const double dm = an::deuar_munro_limit(0.714);
  v.detail << " copier_limit(0.714)=" << dm;
  v.check(std::abs(dm - 0.599) <= 0.001, "copier limit 0.599 +/- 0.001");

  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> pick_m(1, 30);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double F = u(rng);
    const int M = pick_m(rng);
    double total = 0.0;
    for (int m = 0; m <= M + 1; ++m) total += an::schaetz_pm(F, M, m);
    worst = std::max(worst, std::abs(total - 1.0));
  }
  v.detail << " pm_completeness_error=" << worst;
  v.check(worst <= 1e-12, "sum of P_m within 1e-12");

  bool degenerate = true;
  for (int i = 0; i < 50; ++i) {
    const double S = u(rng);
    const double K = u(rng);
    const double W = u(rng);
    const double T = u(rng);
    const int m = pick_m(rng);
    degenerate &= an::cm_correct_prob(S, K, 1.0, T, m) == S * K;
    degenerate &= an::cm_correct_prob(S, K, W, 1.0, m) == S * K;
  }
  v.detail << " cm_degenerate_exact=" << (degenerate ? "yes" : "no");
  v.check(degenerate, "C_m = S K at W = 1 and T = 1");
  return v;
}

Verdict criterion9() {
  Verdict v;
  const std::int64_t trials = 100000;
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> half_n(1, 3);
  double worst_z = 0.0;
  int comparisons = 0;
  for (int set = 0; set < 20; ++set) {
    // Probabilities up to 0.2, presence probabilities down to 0.8.
    ErrorParams p;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    p.k1 = 1.0 - 0.2 * u(rng);
    p.k2 = 1.0 - 0.2 * u(rng);
    p.p0 = 1.0 - 0.2 * u(rng);
    const double theta = u(rng) * M_PI;
    p.alpha = std::cos(theta / 2);
    p.beta = std::polar(std::sin(theta / 2), 2 * M_PI * u(rng));
    const double norm = std::sqrt(std::norm(p.alpha) + std::norm(p.beta));
    p.alpha /= norm;
    p.beta /= norm;
    p.p_x = 0.2 * u(rng);
    p.p_c = 0.2 * u(rng);
    p.p_xloss = 0.2 * u(rng);
    p.p_closs = 0.2 * u(rng);
    p.p_dloss = 0.2 * u(rng);
    p.p_dflip = 0.2 * u(rng);
    const int n = 2 * half_n(rng);
    for (Scheme s : kAll) {
      const SchemeSpec spec{s, n, 0};
      const auto exact = run_scheme(spec, p);
      const auto mc = monte_carlo_run(spec, p, trials, 1000 * set + to_int(s));
      for (Conclusion c : {Conclusion::kZero, Conclusion::kOne, Conclusion::kLoss, Conclusion::kMixed}) {
        const double q = exact.at(c);
        const double N = static_cast<double>(trials);
        const double sigma = std::sqrt(std::max(q * (1 - q), 1.0 / N) / N);
        const double z = std::abs(mc.distribution.at(c) - q) / sigma;
        worst_z = std::max(worst_z, z);
        ++comparisons;
        if (z > 5.0) {
          v.check(false, "set " + std::to_string(set) + " S" + std::to_string(to_int(s)) + " " +
                             to_string(c) + " z=" + std::to_string(z));
        }
      }
    }
  }
  v.detail << " comparisons=" << comparisons << " worst_z=" << worst_z;
  return v;
}

Verdict criterion10() {
  Verdict v;
  double kraus_error = 0.0;
  for (double p : {0.0, 1e-3, 0.1, 0.5, 1.0}) {
    Mat3 sx = Mat3::Zero();
    for (const Mat3& k : x_gate_kraus(p)) sx += k.adjoint() * k;
    kraus_error = std::max(kraus_error, (sx - Mat3::Identity()).cwiseAbs().maxCoeff());
    Mat9 sc = Mat9::Zero();
    for (const Mat9& k : cnot_kraus(p)) sc += k.adjoint() * k;
    kraus_error = std::max(kraus_error, (sc - Mat9::Identity()).cwiseAbs().maxCoeff());
  }
  v.detail << " kraus_completeness_error=" << kraus_error;
  v.check(kraus_error <= 1e-12, "Kraus completeness within 1e-12");

  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double trace_error = 0.0;
  int steps = 0;
  for (int set = 0; set < 40; ++set) {
    ErrorParams p;
    p.k1 = u(rng);
    p.k2 = u(rng);
    p.p0 = u(rng);
    p.alpha = std::sqrt(0.3);
    p.beta = std::polar(std::sqrt(0.7), 1.0);
    p.p_x = u(rng);
    p.p_c = u(rng);
    p.p_xloss = u(rng);
    p.p_closs = u(rng);
    const double a = u(rng);
    p.closs_dist = {a, 1.0 - a, 0.0};
    p.p_dloss = u(rng);
    p.p_dflip = u(rng);
    for (Scheme s : kAll) {
      for (int n : {2, 6, 10}) {
        SchemeTrace trace;
        const auto d = run_scheme_traced({s, n, 0}, p, &trace);
        for (const auto& step : trace.steps) {
          trace_error = std::max(trace_error, std::abs(step.total_mass - 1.0));
          ++steps;
        }
        trace_error = std::max(trace_error, std::abs(d.total() - 1.0));
      }
    }
  }
  v.detail << " steps=" << steps << " max_trace_error=" << trace_error;
  v.check(trace_error <= 1e-10, "trace preserved within 1e-10");
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Verdict()>> criteria = {
      criterion1, criterion2, criterion3, criterion4, criterion5,
      criterion6, criterion7, criterion8, criterion9, criterion10,
  };
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: acceptance [--criterion N]\n");
      return 2;
    }
  }
  if (only < 0 || only > static_cast<int>(criteria.size())) {
    std::fprintf(stderr, "criterion must be 1..%zu\n", criteria.size());
    return 2;
  }

  int failures = 0;
  for (int i = 1; i <= static_cast<int>(criteria.size()); ++i) {
    if (only != 0 && i != only) continue;
    Verdict v;
    try {
      v = criteria[i - 1]();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail << " [exception: " << e.what() << "]";
    }
    std::printf("%s criterion %d:%s\n", v.pass ? "PASS" : "FAIL", i, v.detail.str().c_str());
    std::fflush(stdout);
    if (!v.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
