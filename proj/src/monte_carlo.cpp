#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "cnotread/schemes.hpp"

namespace cnotread {

namespace {

using Rng = std::mt19937_64;

double uniform(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

// Draws one Kraus operator with probability |K psi|^2 and returns the
// renormalized image.
template <typename Vec, typename Mat>
Vec sample_kraus(const std::vector<Mat>& ops, const Vec& psi, Rng& rng) {
  const double u = uniform(rng);
  double acc = 0.0;
  Vec last = psi;
  for (const Mat& k : ops) {
    const Vec image = k * psi;
    const double weight = image.squaredNorm();
    if (weight <= 0.0) continue;
    acc += weight;
    last = image / std::sqrt(weight);
    if (u < acc) return last;
  }
  return last;
}

int sample_index(const std::array<double, 3>& probs, Rng& rng) {
  const double u = uniform(rng);
  double acc = 0.0;
  for (int i = 0; i < 3; ++i) {
    acc += probs[i];
    if (u < acc) return i;
  }
  for (int i = 2; i >= 0; --i) {
    if (probs[i] > 0.0) return i;
  }
  return 2;
}

class Trajectory {
 public:
  Trajectory(const ErrorParams& params)
      : params_(params),
        cnot_ops_(cnot_kraus(params.p_c)),
        cnot_loss_ops_(cnot_loss_kraus(params.p_closs, params.closs_dist)),
        x_ops_(x_gate_kraus(params.p_x)),
        x_loss_ops_(mode_loss_kraus(params.p_xloss)) {}

  void reset(Rng& rng) {
    if (uniform(rng) < params_.k1) {
      psi_ = Vec3(params_.alpha, params_.beta, 0.0);
    } else {
      psi_ = Vec3(0.0, 0.0, 1.0);
    }
  }

  Outcome measure_round(Rng& rng) {
    const std::array<double, 3> ancilla_probs = {params_.k2 * params_.p0,
                                                 params_.k2 * (1.0 - params_.p0), 1.0 - params_.k2};
    const int ancilla = sample_index(ancilla_probs, rng);
    Vec9 joint = Vec9::Zero();
    for (int a = 0; a < kModeDim; ++a) joint(3 * a + ancilla) = psi_(a);

    joint = sample_kraus(cnot_ops_, joint, rng);
    if (params_.p_closs > 0.0) joint = sample_kraus(cnot_loss_ops_, joint, rng);

    std::array<double, 3> level_probs{};
    for (int a = 0; a < kModeDim; ++a) {
      for (int j = 0; j < kModeDim; ++j) level_probs[j] += std::norm(joint(3 * a + j));
    }
    const int level = sample_index(level_probs, rng);
    for (int a = 0; a < kModeDim; ++a) psi_(a) = joint(3 * a + level);
    psi_ /= std::sqrt(level_probs[level]);

    if (level == index_of(Level::kLoss)) return Outcome::kNoClick;
    if (uniform(rng) < params_.p_dloss) return Outcome::kNoClick;
    bool bit = level == index_of(Level::kOne);
    if (uniform(rng) < params_.p_dflip) bit = !bit;
    return bit ? Outcome::kOne : Outcome::kZero;
  }

  void x_gate(Rng& rng) {
    psi_ = sample_kraus(x_ops_, psi_, rng);
    if (params_.p_xloss > 0.0) psi_ = sample_kraus(x_loss_ops_, psi_, rng);
  }

 private:
  const ErrorParams& params_;
  std::vector<Mat9> cnot_ops_;
  std::vector<Mat9> cnot_loss_ops_;
  std::vector<Mat3> x_ops_;
  std::vector<Mat3> x_loss_ops_;
  Vec3 psi_;
};

struct TrialOutcome {
  Conclusion conclusion;
  int gates;
};

TrialOutcome run_trial(const SchemeSpec& spec, const std::vector<int>& x_after, Trajectory& traj,
                       Rng& rng) {
  traj.reset(rng);
  std::vector<Outcome> records;
  std::vector<Outcome> clicks;
  for (int detector = 0; detector < spec.n_detectors; ++detector) {
    const Outcome o = traj.measure_round(rng);
    records.push_back(o);
    if (o != Outcome::kNoClick) clicks.push_back(o);

    switch (spec.scheme) {
      case Scheme::kS1:
      case Scheme::kS2:
      case Scheme::kS3:
        for (int pos : x_after) {
          if (pos == detector) traj.x_gate(rng);
        }
        break;
      case Scheme::kS4:
        if (!clicks.empty()) {
          return {clicks[0] == Outcome::kZero ? Conclusion::kZero : Conclusion::kOne, detector + 1};
        }
        break;
      case Scheme::kS5:
        if (clicks.size() == 2) return {decode_scheme5(clicks[0], clicks[1]), detector + 1};
        if (clicks.size() == 1 && o != Outcome::kNoClick) traj.x_gate(rng);
        break;
    }
  }
  switch (spec.scheme) {
    case Scheme::kS4:
      return {Conclusion::kMixed, spec.n_detectors};
    case Scheme::kS5:
      return {Conclusion::kLoss, spec.n_detectors};
    default:
      return {report_as(spec.scheme, tally_vote(records, x_after, spec.loss_interval)),
              spec.n_detectors};
  }
}

}  // namespace

MonteCarloResult monte_carlo_run(const SchemeSpec& spec, const ErrorParams& params,
                                 std::int64_t trials, std::uint64_t seed) {
  spec.validate();
  params.validate();
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");

  Rng rng(seed);
  Trajectory traj(params);
  const std::vector<int> x_after = x_gate_positions(spec);
  MonteCarloResult result;
  result.trials = trials;
  std::int64_t gates = 0;
  for (std::int64_t t = 0; t < trials; ++t) {
    const TrialOutcome outcome = run_trial(spec, x_after, traj, rng);
    ++result.counts[static_cast<int>(outcome.conclusion)];
    gates += outcome.gates;
  }
  auto& dist = result.distribution;
  const double n = static_cast<double>(trials);
  dist.p_zero = result.counts[static_cast<int>(Conclusion::kZero)] / n;
  dist.p_one = result.counts[static_cast<int>(Conclusion::kOne)] / n;
  dist.p_loss = result.counts[static_cast<int>(Conclusion::kLoss)] / n;
  dist.p_mixed = result.counts[static_cast<int>(Conclusion::kMixed)] / n;
  dist.expected_gates = static_cast<double>(gates) / n;
  dist.fidelity = conclusion_fidelity(dist, params);
  return result;
}

}  // namespace cnotread
