#include "cnotread/sweep.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "cnotread/parallel.hpp"

namespace cnotread {

namespace {

constexpr std::array<std::pair<SweepAxis, const char*>, 10> kAxisNames = {{
    {SweepAxis::kK1, "k1"},
    {SweepAxis::kK2, "k2"},
    {SweepAxis::kP0, "p0"},
    {SweepAxis::kPx, "p_x"},
    {SweepAxis::kPc, "p_c"},
    {SweepAxis::kPxLoss, "p_xloss"},
    {SweepAxis::kPcLoss, "p_closs"},
    {SweepAxis::kPdLoss, "p_dloss"},
    {SweepAxis::kPdFlip, "p_dflip"},
    {SweepAxis::kDetectors, "n_detectors"},
}};

}  // namespace

std::string to_string(SweepAxis axis) {
  for (const auto& [a, name] : kAxisNames) {
    if (a == axis) return name;
  }
  return "?";
}

SweepAxis sweep_axis_from_string(const std::string& name) {
  for (const auto& [a, n] : kAxisNames) {
    if (name == n) return a;
  }
  throw std::invalid_argument("unknown sweep axis '" + name + "'");
}

void SweepSpec::validate() const {
  if (schemes.empty()) throw std::invalid_argument("sweep needs at least one scheme");
  if (!(from <= to)) throw std::invalid_argument("sweep needs from <= to");
  if (steps < 2) throw std::invalid_argument("sweep needs steps >= 2");
  if (axis != SweepAxis::kDetectors && (from < 0.0 || to > 1.0)) {
    throw std::invalid_argument("probability axis " + to_string(axis) + " must stay in [0, 1]");
  }
  fixed.validate();
}

std::vector<double> SweepSpec::axis_values() const {
  std::vector<double> out;
  out.reserve(steps);
  for (int i = 0; i < steps; ++i) {
    double v = from + (to - from) * static_cast<double>(i) / static_cast<double>(steps - 1);
    if (i == steps - 1) v = to;
    if (axis == SweepAxis::kDetectors) v = std::round(v);
    out.push_back(v);
  }
  return out;
}

void apply_axis(SweepAxis axis, double value, ErrorParams& params, SchemeSpec& spec) {
  switch (axis) {
    case SweepAxis::kK1:
      params.k1 = value;
      break;
    case SweepAxis::kK2:
      params.k2 = value;
      break;
    case SweepAxis::kP0:
      params.p0 = value;
      break;
    case SweepAxis::kPx:
      params.p_x = value;
      break;
    case SweepAxis::kPc:
      params.p_c = value;
      break;
    case SweepAxis::kPxLoss:
      params.p_xloss = value;
      break;
    case SweepAxis::kPcLoss:
      params.p_closs = value;
      break;
    case SweepAxis::kPdLoss:
      params.p_dloss = value;
      break;
    case SweepAxis::kPdFlip:
      params.p_dflip = value;
      break;
    case SweepAxis::kDetectors:
      spec.n_detectors = static_cast<int>(std::lround(value));
      break;
  }
}

double fidelity_at(const SchemeSpec& spec, const ErrorParams& params) {
  return run_scheme(spec, params).fidelity;
}

SweepTable run_sweep(const SweepSpec& spec, unsigned workers) {
  spec.validate();
  struct Job {
    double value;
    SchemeSpec scheme;
    ErrorParams params;
  };
  std::vector<Job> jobs;
  for (double v : spec.axis_values()) {
    for (const SchemeSpec& s : spec.schemes) {
      Job job{v, s, spec.fixed};
      apply_axis(spec.axis, v, job.params, job.scheme);
      if (job.scheme.scheme == Scheme::kS3 && job.scheme.n_detectors % 2 != 0) continue;
      jobs.push_back(job);
    }
  }
  auto results = parallel_map<ConclusionDistribution>(
      jobs.size(), [&](std::size_t i) { return run_scheme(jobs[i].scheme, jobs[i].params); },
      workers);
  SweepTable table{spec.axis, {}};
  table.rows.reserve(jobs.size());
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    table.rows.push_back({jobs[i].value, jobs[i].scheme, results[i]});
  }
  return table;
}

DipAnalysis analyze_dip(const SchemeSpec& spec, const ErrorParams& params, double k1_from,
                        double k1_to, double grid_step, double slope_step) {
  if (!(k1_from < k1_to) || grid_step <= 0.0 || slope_step <= 0.0) {
    throw std::invalid_argument("analyze_dip needs k1_from < k1_to and positive steps");
  }
  auto fidelity_of = [&](double k1) {
    ErrorParams p = params;
    p.k1 = std::min(k1, 1.0);
    return fidelity_at(spec, p);
  };

  DipAnalysis out;
  const int count = static_cast<int>(std::floor((k1_to - k1_from) / grid_step + 1e-9)) + 1;
  for (int i = 0; i < count; ++i) {
    const double k1 = std::min(k1_from + i * grid_step, k1_to);
    out.k1.push_back(k1);
    out.fidelity.push_back(fidelity_of(k1));
  }
  for (int i = 1; i + 1 < count; ++i) {
    const double f = out.fidelity[i];
    if (f < out.fidelity[i - 1] && f < out.fidelity[i + 1]) out.local_minima.push_back(out.k1[i]);
    if (f > out.fidelity[i - 1] && f > out.fidelity[i + 1]) out.local_maxima.push_back(out.k1[i]);
  }

  // Slopes only where both stencil points stay inside [0, 1].
  std::vector<std::pair<double, double>> slopes;
  for (double k1 : out.k1) {
    if (k1 - slope_step < 0.0 || k1 + slope_step > 1.0) continue;
    slopes.emplace_back(k1, (fidelity_of(k1 + slope_step) - fidelity_of(k1 - slope_step)) /
                                (2.0 * slope_step));
  }
  for (std::size_t i = slopes.size(); i-- > 1;) {
    if (std::signbit(slopes[i].second) != std::signbit(slopes[i - 1].second)) {
      out.onset = slopes[i].first;
      break;
    }
  }
  return out;
}

}  // namespace cnotread
