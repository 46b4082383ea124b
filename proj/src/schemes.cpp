#include "cnotread/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "cnotread/scheme_trace.hpp"

namespace cnotread {

namespace {

constexpr int kMaxEnumeratedVoteDetectors = 12;

constexpr int idx(Outcome o) { return static_cast<int>(o); }

bool is_click(Outcome o) { return o != Outcome::kNoClick; }

bool is_vote_scheme(Scheme s) { return s == Scheme::kS1 || s == Scheme::kS2 || s == Scheme::kS3; }

int vote_delta(Outcome o, bool flipped) {
  if (o == Outcome::kNoClick) return 0;
  const int sign = o == Outcome::kZero ? 1 : -1;
  return flipped ? -sign : sign;
}

Conclusion conclude_from_tally(int tally, int loss_interval) {
  if (tally > loss_interval) return Conclusion::kZero;
  if (tally < -loss_interval) return Conclusion::kOne;
  return Conclusion::kMixed;
}

Conclusion conclusion_of_click(Outcome o) {
  return o == Outcome::kZero ? Conclusion::kZero : Conclusion::kOne;
}

double trace_of(const Mat3& m) { return m.trace().real(); }

// One copy-and-measure round on an unnormalized mode-1 state.
class RoundKernel {
 public:
  explicit RoundKernel(const ErrorParams& params)
      : params_(params), ancilla_(prepare_ancilla(params).as_mode()) {}

  std::array<Mat3, 3> operator()(const Mat3& rho) const {
    const Mat9 joint = cnot_channel(kron(rho, ancilla_), params_.p_c, params_.p_closs,
                                    params_.closs_dist);
    return measure_ancilla_and_discard(joint, params_.p_dloss, params_.p_dflip);
  }

  Mat3 x_gate(const Mat3& rho) const { return x_gate_channel(rho, params_.p_x, params_.p_xloss); }

 private:
  const ErrorParams& params_;
  Mat3 ancilla_;
};

// Records the total probability mass after each step of a run.
class MassLedger {
 public:
  explicit MassLedger(SchemeTrace* sink) : sink_(sink) {}

  void conclude(double mass) { concluded_ += mass; }

  template <typename Range>
  void step(const char* label, const Range& live) {
    if (sink_ == nullptr) return;
    double total = concluded_;
    for (const Mat3& m : live) total += trace_of(m);
    sink_->steps.push_back({label, total});
  }

 private:
  SchemeTrace* sink_;
  double concluded_ = 0.0;
};

ConclusionDistribution run_vote_scheme(const SchemeSpec& spec, const ErrorParams& params,
                                       SchemeTrace* trace) {
  const int n = spec.n_detectors;
  const std::vector<int> x_after = x_gate_positions(spec);
  const RoundKernel round(params);
  MassLedger ledger(trace);

  // Node k holds the mode-1 state summed over records with tally k - n.
  std::vector<Mat3> nodes(2 * n + 1, Mat3::Zero());
  std::vector<bool> live(2 * n + 1, false);
  nodes[n] = input_qubit_state(params);
  live[n] = true;

  int x_seen = 0;
  for (int detector = 0; detector < n; ++detector) {
    const bool flipped = (x_seen % 2) == 1;
    std::vector<Mat3> next(2 * n + 1, Mat3::Zero());
    std::vector<bool> next_live(2 * n + 1, false);
    for (int k = 0; k < 2 * n + 1; ++k) {
      if (!live[k]) continue;
      const auto branches = round(nodes[k]);
      for (Outcome o : {Outcome::kZero, Outcome::kOne, Outcome::kNoClick}) {
        const int target = k + vote_delta(o, flipped);
        next[target] += branches[idx(o)];
        next_live[target] = true;
      }
    }
    nodes = std::move(next);
    live = std::move(next_live);
    ledger.step("round", nodes);
    if (std::find(x_after.begin(), x_after.end(), detector) != x_after.end()) {
      for (int k = 0; k < 2 * n + 1; ++k) {
        if (live[k]) nodes[k] = round.x_gate(nodes[k]);
      }
      ++x_seen;
      ledger.step("x_gate", nodes);
    }
  }

  ConclusionDistribution dist;
  for (int k = 0; k < 2 * n + 1; ++k) {
    if (!live[k]) continue;
    const Conclusion c = report_as(spec.scheme, conclude_from_tally(k - n, spec.loss_interval));
    dist.at(c) += trace_of(nodes[k]);
  }
  dist.expected_gates = n;
  return dist;
}

ConclusionDistribution run_first_click(const SchemeSpec& spec, const ErrorParams& params,
                                       SchemeTrace* trace) {
  const RoundKernel round(params);
  MassLedger ledger(trace);
  ConclusionDistribution dist;
  std::array<Mat3, 1> pending = {input_qubit_state(params)};
  for (int detector = 0; detector < spec.n_detectors; ++detector) {
    dist.expected_gates += trace_of(pending[0]);
    const auto branches = round(pending[0]);
    for (Outcome o : {Outcome::kZero, Outcome::kOne}) {
      const double mass = trace_of(branches[idx(o)]);
      dist.at(conclusion_of_click(o)) += mass;
      ledger.conclude(mass);
    }
    pending[0] = branches[idx(Outcome::kNoClick)];
    ledger.step("round", pending);
  }
  dist.at(report_as(spec.scheme, Conclusion::kMixed)) += trace_of(pending[0]);
  return dist;
}

ConclusionDistribution run_two_click(const SchemeSpec& spec, const ErrorParams& params,
                                     SchemeTrace* trace) {
  const RoundKernel round(params);
  MassLedger ledger(trace);
  ConclusionDistribution dist;
  // [0] no click yet, [1] first click read Zero, [2] first click read One.
  std::array<Mat3, 3> nodes = {input_qubit_state(params), Mat3::Zero(), Mat3::Zero()};
  const std::array<Outcome, 2> first_of = {Outcome::kZero, Outcome::kOne};

  for (int detector = 0; detector < spec.n_detectors; ++detector) {
    for (const Mat3& m : nodes) dist.expected_gates += trace_of(m);
    std::array<Mat3, 3> next = {Mat3::Zero(), Mat3::Zero(), Mat3::Zero()};

    for (int f = 0; f < 2; ++f) {
      const auto branches = round(nodes[1 + f]);
      for (Outcome o : {Outcome::kZero, Outcome::kOne}) {
        const double mass = trace_of(branches[idx(o)]);
        dist.at(decode_scheme5(first_of[f], o)) += mass;
        ledger.conclude(mass);
      }
      next[1 + f] += branches[idx(Outcome::kNoClick)];
    }

    const auto branches = round(nodes[0]);
    next[0] = branches[idx(Outcome::kNoClick)];
    std::array<Mat3, 3> measured = next;
    for (int f = 0; f < 2; ++f) measured[1 + f] += branches[idx(first_of[f])];
    ledger.step("round", measured);
    // The X gate follows the first click only.
    for (int f = 0; f < 2; ++f) next[1 + f] += round.x_gate(branches[idx(first_of[f])]);
    ledger.step("x_gate", next);
    nodes = next;
  }
  for (const Mat3& m : nodes) dist.p_loss += trace_of(m);
  return dist;
}

void enumerate(const SchemeSpec& spec, const RoundKernel& round,
               const std::vector<int>& x_after, const Mat3& state, std::vector<DetectorRecord>& records,
               std::vector<OutcomeBranch>& out) {
  const int detector = static_cast<int>(records.size());
  const double mass = trace_of(state);
  if (mass <= 0.0) return;

  std::vector<Outcome> clicks;
  for (const auto& r : records) {
    if (is_click(r.outcome)) clicks.push_back(r.outcome);
  }

  auto emit = [&](Conclusion c) { out.push_back({records, mass, report_as(spec.scheme, c)}); };

  if (spec.scheme == Scheme::kS4 && !clicks.empty()) return emit(conclusion_of_click(clicks[0]));
  if (spec.scheme == Scheme::kS5 && clicks.size() == 2) {
    return emit(decode_scheme5(clicks[0], clicks[1]));
  }
  if (detector == spec.n_detectors) {
    if (is_vote_scheme(spec.scheme)) {
      std::vector<Outcome> outcomes;
      for (const auto& r : records) outcomes.push_back(r.outcome);
      return emit(tally_vote(outcomes, x_after, spec.loss_interval));
    }
    return emit(spec.scheme == Scheme::kS5 ? Conclusion::kLoss : Conclusion::kMixed);
  }

  const auto branches = round(state);
  for (Outcome o : {Outcome::kZero, Outcome::kOne, Outcome::kNoClick}) {
    Mat3 next = branches[idx(o)];
    const bool vote_x = is_vote_scheme(spec.scheme) &&
                        std::find(x_after.begin(), x_after.end(), detector) != x_after.end();
    const bool first_click_x = spec.scheme == Scheme::kS5 && clicks.empty() && is_click(o);
    if (vote_x || first_click_x) next = round.x_gate(next);
    records.push_back({detector, o});
    enumerate(spec, round, x_after, next, records, out);
    records.pop_back();
  }
}

}  // namespace

Scheme scheme_from_int(int id) {
  if (id < 1 || id > 5) throw std::invalid_argument("scheme must be 1..5, got " + std::to_string(id));
  return static_cast<Scheme>(id);
}

void SchemeSpec::validate() const {
  if (n_detectors < 1 || n_detectors > kMaxDetectors) {
    throw std::invalid_argument("n_detectors must be in 1.." + std::to_string(kMaxDetectors) +
                                ", got " + std::to_string(n_detectors));
  }
  if (scheme == Scheme::kS3 && n_detectors % 2 != 0) {
    throw std::invalid_argument("scheme 3 needs an even number of detectors");
  }
  if (loss_interval < 0) throw std::invalid_argument("loss_interval must be >= 0");
}

const char* to_string(Conclusion c) {
  switch (c) {
    case Conclusion::kZero:
      return "Zero";
    case Conclusion::kOne:
      return "One";
    case Conclusion::kLoss:
      return "Loss";
    case Conclusion::kMixed:
      return "Mixed";
  }
  return "?";
}

double& ConclusionDistribution::at(Conclusion c) {
  switch (c) {
    case Conclusion::kZero:
      return p_zero;
    case Conclusion::kOne:
      return p_one;
    case Conclusion::kLoss:
      return p_loss;
    case Conclusion::kMixed:
      break;
  }
  return p_mixed;
}

double ConclusionDistribution::at(Conclusion c) const {
  return const_cast<ConclusionDistribution*>(this)->at(c);
}

int vote_tally(std::span<const Outcome> records, std::span<const int> x_after) {
  int tally = 0;
  int x_seen = 0;
  for (int i = 0; i < static_cast<int>(records.size()); ++i) {
    tally += vote_delta(records[i], x_seen % 2 == 1);
    x_seen += static_cast<int>(std::count(x_after.begin(), x_after.end(), i));
  }
  return tally;
}

Conclusion tally_vote(std::span<const Outcome> records, std::span<const int> x_after,
                      int loss_interval) {
  return conclude_from_tally(vote_tally(records, x_after), loss_interval);
}

Conclusion decode_scheme5(Outcome first, Outcome second) {
  if (!is_click(first) || !is_click(second)) {
    throw std::invalid_argument("scheme 5 decoding needs two clicks");
  }
  if (first == second) return Conclusion::kLoss;
  return first == Outcome::kZero ? Conclusion::kZero : Conclusion::kOne;
}

std::vector<int> x_gate_positions(const SchemeSpec& spec) {
  std::vector<int> out;
  if (spec.scheme == Scheme::kS2) {
    for (int i = 0; i + 1 < spec.n_detectors; ++i) out.push_back(i);
  } else if (spec.scheme == Scheme::kS3) {
    out.push_back(spec.n_detectors / 2 - 1);
  }
  return out;
}

Conclusion report_as(Scheme scheme, Conclusion raw) {
  const bool detects_loss = scheme == Scheme::kS2 || scheme == Scheme::kS3 || scheme == Scheme::kS5;
  if (detects_loss && raw == Conclusion::kMixed) return Conclusion::kLoss;
  return raw;
}

std::array<double, 3> ideal_distribution(const ErrorParams& params) {
  return {params.k1 * std::norm(params.alpha), params.k1 * std::norm(params.beta), 1.0 - params.k1};
}

double conclusion_fidelity(const ConclusionDistribution& dist, const ErrorParams& params) {
  const auto ideal = ideal_distribution(params);
  const std::array<double, 4> p = {dist.p_zero, dist.p_one, dist.p_loss, dist.p_mixed};
  const std::array<double, 4> q = {ideal[0], ideal[1], ideal[2], 0.0};
  return classical_fidelity(p, q);
}

ConclusionDistribution run_scheme(const SchemeSpec& spec, const ErrorParams& params) {
  return run_scheme_traced(spec, params, nullptr);
}

ConclusionDistribution run_scheme_traced(const SchemeSpec& spec, const ErrorParams& params,
                                         SchemeTrace* trace) {
  spec.validate();
  params.validate();
  ConclusionDistribution dist;
  switch (spec.scheme) {
    case Scheme::kS1:
    case Scheme::kS2:
    case Scheme::kS3:
      dist = run_vote_scheme(spec, params, trace);
      break;
    case Scheme::kS4:
      dist = run_first_click(spec, params, trace);
      break;
    case Scheme::kS5:
      dist = run_two_click(spec, params, trace);
      break;
  }
  dist.fidelity = conclusion_fidelity(dist, params);
  return dist;
}

std::vector<OutcomeBranch> enumerate_branches(const SchemeSpec& spec, const ErrorParams& params) {
  spec.validate();
  params.validate();
  if (is_vote_scheme(spec.scheme) && spec.n_detectors > kMaxEnumeratedVoteDetectors) {
    throw std::invalid_argument("full branch enumeration is limited to " +
                                std::to_string(kMaxEnumeratedVoteDetectors) + " detectors");
  }
  const RoundKernel round(params);
  const std::vector<int> x_after = x_gate_positions(spec);
  std::vector<OutcomeBranch> out;
  std::vector<DetectorRecord> records;
  enumerate(spec, round, x_after, input_qubit_state(params), records, out);
  return out;
}

ConclusionDistribution summarize(std::span<const OutcomeBranch> branches, const SchemeSpec& spec,
                                 const ErrorParams& params) {
  ConclusionDistribution dist;
  for (const auto& b : branches) {
    dist.at(b.conclusion) += b.probability;
    // CNOTs applied along this record equal the number of readings taken.
    dist.expected_gates += b.probability * static_cast<double>(b.records.size());
  }
  (void)spec;
  dist.fidelity = conclusion_fidelity(dist, params);
  return dist;
}

}  // namespace cnotread
